#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <fsig/catalog.hpp>
#include <fsig/job.hpp>

namespace {

using nlohmann::ordered_json;

struct CommonOpts {
    long long prime = 0;
    std::string vars;
    std::string poly;
    std::string job_file;
    int e_max = 1;
    long long budget = fsig::default_budget;
    bool json_out = false;
    bool approx = false;
};

void add_job_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("-p,--prime", o.prime, "characteristic (a prime)");
    cmd->add_option("-v,--vars", o.vars, "variables as name:weight,name:weight,...");
    cmd->add_option("-f,--poly", o.poly, "defining equation");
    cmd->add_option("-j,--job", o.job_file, "JSON job file (flags win on conflict)");
    cmd->add_option("-e,--emax", o.e_max, "Frobenius iterate e (or range limit)");
    cmd->add_option("--budget", o.budget, "max monomial basis size q^n");
    cmd->add_flag("--json", o.json_out, "machine-readable output");
    cmd->add_flag("--approx", o.approx, "append 6-digit decimal renderings");
}

fsig::JobSpec collect_job(CLI::App* cmd, const CommonOpts& o) {
    fsig::JobSpec job;
    if (cmd->count("--job")) {
        std::ifstream in(o.job_file);
        if (!in) throw fsig::error("cannot open job file " + o.job_file);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& ex) {
            throw fsig::error(std::string("bad job file: ") + ex.what());
        }
        job = fsig::job_from_json(j);
    }
    if (cmd->count("--prime")) job.prime = o.prime;
    if (cmd->count("--vars")) job.variables = fsig::parse_var_spec(o.vars);
    if (cmd->count("--poly")) job.poly_text = o.poly;
    if (cmd->count("--emax")) job.e_max = o.e_max;
    if (cmd->count("--budget")) job.budget = o.budget;
    return job;
}

std::string rational_line(const fsig::Rational& r, bool approx) {
    std::string s = fsig::to_string(r);
    if (approx) s += " (~" + fsig::approx_string(r) + ")";
    return s;
}

std::string profile_str(const std::map<long long, long long>& profile) {
    std::string s;
    for (const auto& [deg, cnt] : profile) {
        if (!s.empty()) s += ",";
        s += std::to_string(deg) + ":" + std::to_string(cnt);
    }
    return s;
}

void print_report_line(const fsig::SplittingReport& rep, bool approx) {
    std::cout << "e=" << rep.e << " q=" << rep.q << " a_q=" << rep.a_q
              << " ratio=" << rational_line(rep.ratio, approx)
              << " blocks=" << rep.block_count
              << " degree_bound=" << (rep.degree_bound_ok ? "ok" : "violated")
              << " profile=" << profile_str(rep.degree_profile) << "\n";
}

ordered_json report_json(const fsig::SplittingReport& rep) {
    ordered_json j;
    j["e"] = rep.e;
    j["q"] = rep.q;
    j["a_q"] = rep.a_q;
    j["ratio"] = fsig::to_string(rep.ratio);
    j["blocks"] = rep.block_count;
    j["degree_bound_ok"] = rep.degree_bound_ok;
    ordered_json profile;
    for (const auto& [deg, cnt] : rep.degree_profile) profile[std::to_string(deg)] = cnt;
    j["profile"] = profile;
    return j;
}

int cmd_bound(CLI::App* cmd, const CommonOpts& o) {
    fsig::ValidatedJob vj = fsig::validate_job(collect_job(cmd, o));
    fsig::RationalSeries series;
    int d;
    if (vj.poly) {
        long long deg = fsig::weighted_degree(*vj.poly);
        series = fsig::ci_series(vj.ring->weights, {deg});
        d = fsig::hypersurface_dim(*vj.ring);
    } else {
        series = fsig::ci_series(vj.ring->weights, {});
        d = static_cast<int>(vj.ring->nvars());
    }
    long long a = fsig::a_invariant(series);
    fsig::Rational ep = fsig::e_prime(series, d);
    fsig::Rational bd = fsig::signature_bound(a, d, ep);
    if (o.json_out) {
        ordered_json j;
        j["d"] = d;
        j["a"] = a;
        j["eprime"] = fsig::to_string(ep);
        j["bound"] = fsig::to_string(bd);
        j["series"] = fsig::render_series(series);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "d = " << d << "\n";
        std::cout << "a = " << a << "\n";
        std::cout << "eprime = " << rational_line(ep, o.approx) << "\n";
        std::cout << "bound = " << rational_line(bd, o.approx) << "\n";
        std::cout << "series = " << fsig::render_series(series) << "\n";
    }
    return 0;
}

int cmd_aq(CLI::App* cmd, const CommonOpts& o, bool use_oracle, bool no_profile) {
    fsig::JobSpec job = collect_job(cmd, o);
    fsig::ValidatedJob vj = fsig::validate_job(job);
    if (!vj.poly) throw fsig::error("aq needs an equation (-f)");
    fsig::SplittingReport rep =
        fsig::free_rank_aq(*vj.poly, job.e_max, job.budget, 0, !no_profile);
    if (use_oracle) {
        long long naive = fsig::naive_free_rank_oracle(*vj.poly, job.e_max);
        if (naive != rep.a_q) throw fsig::oracle_mismatch_error(rep.a_q, naive);
    }
    if (o.json_out) {
        ordered_json j = report_json(rep);
        if (use_oracle) j["oracle"] = rep.a_q;
        std::cout << j.dump(2) << "\n";
    } else {
        print_report_line(rep, o.approx);
        if (use_oracle) std::cout << "oracle agrees: a_q=" << rep.a_q << "\n";
    }
    return 0;
}

int cmd_fsignature(CLI::App* cmd, const CommonOpts& o) {
    fsig::JobSpec job = collect_job(cmd, o);
    fsig::ValidatedJob vj = fsig::validate_job(job);
    if (!vj.poly) throw fsig::error("fsignature needs an equation (-f)");
    fsig::SplittingSequence seq =
        fsig::fsignature_sequence(*vj.poly, job.e_max, job.budget);
    if (o.json_out) {
        ordered_json j;
        ordered_json reports = ordered_json::array();
        for (const auto& rep : seq.reports) reports.push_back(report_json(rep));
        j["reports"] = reports;
        if (seq.budget_stopped) {
            ordered_json stop;
            stop["e"] = seq.stopped_e;
            stop["need"] = seq.stopped_need;
            stop["budget"] = seq.stopped_limit;
            j["stopped"] = stop;
        } else {
            j["stopped"] = nullptr;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& rep : seq.reports) print_report_line(rep, o.approx);
        if (seq.budget_stopped)
            std::cout << "e=" << seq.stopped_e << " skipped: need " << seq.stopped_need
                      << " > budget " << seq.stopped_limit << "\n";
    }
    return 0;
}

int cmd_classify(CLI::App* cmd, const CommonOpts& o) {
    fsig::JobSpec job = collect_job(cmd, o);
    fsig::ValidatedJob vj = fsig::validate_job(job);
    if (!vj.poly) throw fsig::error("classify needs an equation (-f)");
    fsig::Classification cls = fsig::classify(*vj.poly, job.e_max, job.budget);
    if (o.json_out) {
        ordered_json j;
        j["verdict"] = fsig::to_string(cls.verdict);
        j["f_pure"] = cls.is_f_pure;
        j["a"] = cls.a_inv;
        j["unique_summand_all_e"] = cls.unique_summand_all_e;
        ordered_json aq = ordered_json::array();
        for (const auto& rep : cls.reports) aq.push_back(rep.a_q);
        j["a_q"] = aq;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << fsig::to_string(cls.verdict) << "\n";
        std::cout << "f_pure = " << (cls.is_f_pure ? "true" : "false") << "\n";
        std::cout << "a = " << cls.a_inv << "\n";
        std::cout << "a_q =";
        for (const auto& rep : cls.reports) std::cout << " " << rep.a_q;
        std::cout << "\n";
    }
    return 0;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw fsig::error("cannot write " + path.string());
    out << content;
}

int run_and_persist(const std::vector<fsig::FamilyEntry>& entries, int e_max,
                    long long budget, const std::string& out_dir, bool quiet) {
    fsig::SuiteResult res = fsig::run_suite(entries, e_max, budget);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file(std::filesystem::path(out_dir) / "report.csv",
                   fsig::suite_csv(res.records));
        write_file(std::filesystem::path(out_dir) / "report.json",
                   fsig::suite_json(res.records));
    }
    int failures = 0;
    for (const auto& rec : res.records) {
        bool ok = rec.ok();
        if (!ok) ++failures;
        if (!quiet || !ok) {
            std::cout << (ok ? "[ ok ] " : "[FAIL] ") << rec.entry.id();
            if (!rec.error.empty()) std::cout << " error: " << rec.error;
            if (rec.golden_match == fsig::Check::Fail) std::cout << " golden-mismatch";
            if (rec.sop_valid == fsig::Check::Fail) std::cout << " bad-sop";
            for (const auto& row : rec.rows) {
                if (row.skipped) continue;
                auto flag = [&](fsig::Check c, const char* name) {
                    if (c == fsig::Check::Fail)
                        std::cout << " " << name << "@e" << row.e;
                };
                flag(row.fedder, "fedder");
                flag(row.degree_bound, "degree-bound");
                flag(row.symmetry, "symmetry");
                flag(row.partial_sum, "partial-sum");
                flag(row.bound_respected, "bound");
            }
            std::cout << "\n";
        }
    }
    std::cout << (failures == 0 ? "all checks passed" : "checks FAILED") << " ("
              << res.records.size() << " entries)\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius splitting numbers and graded invariants of "
                 "weighted-homogeneous hypersurfaces over F_p"};
    app.require_subcommand(1);

    CommonOpts bound_o, aq_o, fsig_o, cls_o;
    bool aq_oracle = false, aq_no_profile = false;

    CLI::App* bound = app.add_subcommand("bound", "a-invariant, e', and the splitting ratio bound");
    add_job_options(bound, bound_o);

    CLI::App* aq = app.add_subcommand("aq", "splitting number a_q at one Frobenius iterate");
    add_job_options(aq, aq_o);
    aq->add_flag("--oracle", aq_oracle, "cross-check against the unblocked oracle");
    aq->add_flag("--no-profile", aq_no_profile, "rank only (allows inhomogeneous input)");

    CLI::App* fsign = app.add_subcommand("fsignature", "a_q and ratios for e = 1..emax");
    add_job_options(fsign, fsig_o);

    CLI::App* cls = app.add_subcommand("classify", "free-summand structure verdict");
    add_job_options(cls, cls_o);

    std::string verify_out = "paper_report";
    int verify_emax = 2;
    long long verify_budget = fsig::default_budget;
    CLI::App* verify = app.add_subcommand("verify-paper",
                                          "run the golden suite and persist CSV/JSON reports");
    verify->add_option("-o,--out", verify_out, "output directory");
    verify->add_option("-e,--emax", verify_emax, "Frobenius range limit");
    verify->add_option("--budget", verify_budget, "max monomial basis size q^n");

    std::uint64_t corpus_seed = 1;
    int corpus_count = 200;
    std::string corpus_primes = "3,5,7";
    std::string corpus_out;
    int corpus_emax = 1;
    long long corpus_budget = fsig::default_budget;
    CLI::App* corpus = app.add_subcommand("corpus",
                                          "random weighted-homogeneous corpus checks");
    corpus->add_option("--seed", corpus_seed, "corpus generator seed");
    corpus->add_option("--count", corpus_count, "number of entries");
    corpus->add_option("--primes", corpus_primes, "comma-separated characteristics");
    corpus->add_option("-o,--out", corpus_out, "output directory (optional)");
    corpus->add_option("-e,--emax", corpus_emax, "Frobenius range limit");
    corpus->add_option("--budget", corpus_budget, "max monomial basis size q^n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto guarded = [](const std::function<int()>& fn) -> int {
        try {
            return fn();
        } catch (const fsig::not_homogeneous_error& ex) {
            std::cerr << "error: " << ex.what() << "\n";
            return 3;
        } catch (const fsig::oracle_mismatch_error& ex) {
            std::cerr << "error: " << ex.what() << "\n";
            return 4;
        } catch (const fsig::budget_exceeded_error& ex) {
            std::cerr << "error: " << ex.what() << "\n";
            return 5;
        } catch (const std::exception& ex) {
            std::cerr << "error: " << ex.what() << "\n";
            return 2;
        }
    };

    if (bound->parsed()) return guarded([&] { return cmd_bound(bound, bound_o); });
    if (aq->parsed())
        return guarded([&] { return cmd_aq(aq, aq_o, aq_oracle, aq_no_profile); });
    if (fsign->parsed()) return guarded([&] { return cmd_fsignature(fsign, fsig_o); });
    if (cls->parsed()) return guarded([&] { return cmd_classify(cls, cls_o); });
    if (verify->parsed())
        return guarded([&] {
            return run_and_persist(fsig::golden_suite_entries(), verify_emax,
                                   verify_budget, verify_out, false);
        });
    if (corpus->parsed())
        return guarded([&] {
            std::vector<long long> primes;
            std::size_t pos = 0;
            while (pos < corpus_primes.size()) {
                std::size_t comma = corpus_primes.find(',', pos);
                std::string item = corpus_primes.substr(
                    pos, comma == std::string::npos ? std::string::npos : comma - pos);
                try {
                    primes.push_back(std::stoll(item));
                } catch (const std::exception&) {
                    throw fsig::error("bad prime list entry '" + item + "'");
                }
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            auto entries = fsig::random_corpus(corpus_seed, corpus_count, 3, 4, primes);
            int violations = 0;
            for (const auto& entry : entries) {
                fsig::Polynomial f = entry.poly();
                if (fsig::fedder_is_fpure(f) && fsig::hypersurface_a_invariant(f) > 0)
                    ++violations;
            }
            int rc = run_and_persist(entries, corpus_emax, corpus_budget, corpus_out, true);
            std::cout << "fpure_positive_a_violations: " << violations << "\n";
            if (violations > 0) return 1;
            return rc;
        });
    return 2;
}
