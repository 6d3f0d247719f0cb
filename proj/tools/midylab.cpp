#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "midylab/cyclotomic.hpp"
#include "midylab/midy.hpp"
#include "midylab/pseudo.hpp"
#include "midylab/sieve.hpp"

using namespace midylab;

namespace {

FactorBudget budget_from_env() {
    FactorBudget budget;
    if (const char* env = std::getenv("MIDYLAB_FACTOR_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) budget.rho_iterations = v;
        else std::cerr << "warning: ignoring malformed MIDYLAB_FACTOR_BUDGET\n";
    }
    return budget;
}

const char* yn(bool v) { return v ? "yes" : "no"; }

void print_classification(const ClassificationRecord& rec) {
    std::printf("%" PRIu64 " %" PRIu64 " %s %s %s %s", rec.n, rec.base,
                rec.prime ? "prime" : "composite", yn(rec.fermat), yn(rec.strong),
                yn(rec.midy));
    if (rec.order) std::printf(" order=%" PRIu64, *rec.order);
    std::printf(" gcd_case=%s", to_string(rec.gcd_case));
    if (rec.gcd_case == GcdCase::prime_r) std::printf(" r=%" PRIu64, rec.gcd_r);
    for (const auto& r : rec.reasons) std::printf(" [%s]", r.c_str());
    std::printf("\n");
}

void write_hits_csv(std::ostream& out, const std::vector<SieveHit>& hits) {
    out << "N,base,fermat,strong,midy\n";
    for (const auto& h : hits)
        out << h.n << ',' << h.base << ',' << int(h.fermat) << ',' << int(h.strong)
            << ',' << int(h.midy) << '\n';
}

void write_hits_jsonl(std::ostream& out, const std::vector<SieveHit>& hits) {
    for (const auto& h : hits)
        out << "{\"N\":" << h.n << ",\"base\":" << h.base
            << ",\"fermat\":" << (h.fermat ? "true" : "false")
            << ",\"strong\":" << (h.strong ? "true" : "false")
            << ",\"midy\":" << (h.midy ? "true" : "false") << "}\n";
}

int run(CLI::App& app) {
    const FactorBudget budget = budget_from_env();

    // order N b
    auto* cmd_order = app.add_subcommand("order", "multiplicative order of b mod N");
    uint64_t o_n = 0, o_b = 0;
    cmd_order->add_option("N", o_n)->required();
    cmd_order->add_option("b", o_b)->required();
    cmd_order->callback([&] {
        auto prof = multiplicative_order(o_b, o_n, budget);
        std::printf("order %" PRIu64 "\n", prof.order);
        for (const auto& e : prof.per_prime)
            std::printf("p=%" PRIu64 " order_mod_p=%" PRIu64
                        " order_mod_p_power=%" PRIu64 "\n",
                        e.prime, e.order_mod_prime, e.order_mod_prime_power);
    });

    // midy-set N b
    auto* cmd_set = app.add_subcommand("midy-set", "Midy set of N to base b");
    uint64_t s_n = 0, s_b = 0;
    cmd_set->add_option("N", s_n)->required();
    cmd_set->add_option("b", s_b)->required();
    cmd_set->callback([&] {
        auto set = midy_set(s_n, s_b, budget);
        for (size_t i = 0; i < set.members.size(); ++i)
            std::printf("%s%" PRIu64, i ? " " : "", set.members[i]);
        std::printf("\n");
    });

    // expand x N b d
    auto* cmd_expand = app.add_subcommand("expand", "period digits and block sums of x/N");
    uint64_t e_x = 0, e_n = 0, e_b = 0, e_d = 0;
    cmd_expand->add_option("x", e_x)->required();
    cmd_expand->add_option("N", e_n)->required();
    cmd_expand->add_option("b", e_b)->required();
    cmd_expand->add_option("d", e_d)->required();
    cmd_expand->callback([&] {
        auto dec = block_sum(e_x, e_n, e_b, e_d);
        if (e_b <= 36) {
            std::printf("digits %s\n", render_digits(dec.digits, e_b).c_str());
        } else {
            std::printf("digits");
            for (uint64_t dg : dec.digits) std::printf(" %" PRIu64, dg);
            std::printf("\n");
        }
        std::printf("k %" PRIu64 "\n", dec.block_length);
        for (uint64_t j = 0; j < dec.block_count; ++j) {
            std::printf("block %" PRIu64 " ", j + 1);
            if (e_b <= 36) {
                std::string text;
                for (uint64_t i = 0; i < dec.block_length; ++i)
                    text += render_digits({dec.digits[j * dec.block_length + i]}, e_b);
                std::printf("%s = %" PRIu64 "\n", text.c_str(), dec.blocks[j]);
            } else {
                std::printf("= %" PRIu64 "\n", dec.blocks[j]);
            }
        }
        std::printf("sum %" PRIu64 "\n", dec.sum);
        if (dec.divisible)
            std::printf("midy yes multiplier %" PRIu64 "\n", dec.sum / dec.modulus_value);
        else
            std::printf("midy no remainder %" PRIu64 "\n", dec.sum % dec.modulus_value);
    });

    // classify N b [b...]
    auto* cmd_classify = app.add_subcommand("classify", "pseudoprime classification");
    uint64_t c_n = 0;
    std::vector<uint64_t> c_bases;
    cmd_classify->add_option("N", c_n)->required();
    cmd_classify->add_option("bases", c_bases)->required()->expected(-1);
    cmd_classify->callback([&] {
        std::printf("N base primality fermat strong midy\n");
        for (uint64_t b : c_bases) print_classification(classify(c_n, b, budget));
    });

    // cyclotomic n b
    auto* cmd_cyc = app.add_subcommand("cyclotomic", "exact cyclotomic value Phi_n(b)");
    uint64_t y_n = 0, y_b = 0;
    cmd_cyc->add_option("n", y_n)->required();
    cmd_cyc->add_option("b", y_b)->required();
    cmd_cyc->callback([&] {
        std::printf("%s\n", cyclotomic_value(y_n, y_b, budget).value.to_string().c_str());
    });

    // gen fN N b | gen rep p b [--force]
    auto* cmd_gen = app.add_subcommand("gen", "Midy pseudoprime generators");
    auto* gen_fn = cmd_gen->add_subcommand("fN", "f_N(b) = Phi_N(b)/gcd(N, Phi_N(b))");
    uint64_t g_n = 0, g_b = 0;
    gen_fn->add_option("N", g_n)->required();
    gen_fn->add_option("b", g_b)->required();
    gen_fn->callback([&] {
        auto res = f_generator(g_n, g_b, budget);
        std::printf("value %s\n", res.value.to_string().c_str());
        std::printf("primality %s\n",
                    res.value.is_one() ? "unit" : to_string(res.primality));
        if (res.midy_by_theorem) {
            std::printf("midy_pseudoprime base %" PRIu64 "%s\n", g_b,
                        res.midy_checked ? (*res.midy_checked ? " (verified)" : " (VERIFICATION FAILED)")
                                         : " (by theorem)");
        }
    });
    auto* gen_rep = cmd_gen->add_subcommand("rep", "(b^p + 1)/(b + 1) for odd prime p");
    uint64_t r_p = 0, r_b = 0;
    bool r_force = false;
    gen_rep->add_option("p", r_p)->required();
    gen_rep->add_option("b", r_b)->required();
    gen_rep->add_flag("--force", r_force, "allow b outside (1, p-1); the dichotomy no longer applies");
    gen_rep->callback([&] {
        auto res = repunit_plus_generator(r_p, r_b, r_force, budget);
        std::printf("value %s\n", res.value.to_string().c_str());
        std::printf("verdict %s%s\n",
                    res.verdict == RepunitVerdict::prime ? "prime" : "midy_psp",
                    res.probabilistic ? " (probabilistic)" : "");
        if (!res.in_theorem_range)
            std::printf("note b outside (1, p-1): no dichotomy guarantee\n");
    });
    cmd_gen->require_subcommand(1);

    // sieve
    auto* cmd_sieve = app.add_subcommand("sieve", "range sieve for pseudoprimes");
    SieveTask task;
    std::string mode_str = "strong", out_path, format = "table", ck_path;
    unsigned jobs = 1;
    cmd_sieve->add_option("--lo", task.lo)->required();
    cmd_sieve->add_option("--hi", task.hi)->required();
    cmd_sieve->add_option("--bases", task.bases, "comma-separated bases")
        ->required()->delimiter(',');
    cmd_sieve->add_option("--mode", mode_str)->check(CLI::IsMember({"fermat", "strong", "midy", "all"}));
    cmd_sieve->add_option("--jobs", jobs);
    cmd_sieve->add_option("--chunk", task.chunk);
    cmd_sieve->add_option("--checkpoint", ck_path);
    cmd_sieve->add_option("--out", out_path, "write hits to a file instead of stdout");
    cmd_sieve->add_option("--format", format)->check(CLI::IsMember({"table", "csv", "jsonl"}));
    cmd_sieve->callback([&] {
        task.mode = *sieve_mode_from_string(mode_str);
        SieveOptions opts;
        opts.jobs = jobs;
        opts.checkpoint_path = ck_path;
        opts.budget = budget;
        auto rep = sieve_range(task, opts);
        for (const auto& s : rep.skipped)
            std::cerr << "skipped " << s.n << " " << s.reason << "\n";
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out) throw error("cannot open output file " + out_path);
            if (format == "jsonl") write_hits_jsonl(out, rep.hits);
            else write_hits_csv(out, rep.hits);
            std::printf("%zu hits written to %s\n", rep.hits.size(), out_path.c_str());
        } else if (format == "csv") {
            write_hits_csv(std::cout, rep.hits);
        } else if (format == "jsonl") {
            write_hits_jsonl(std::cout, rep.hits);
        } else {
            std::printf("N base fermat strong midy\n");
            for (const auto& h : rep.hits)
                std::printf("%" PRIu64 " %" PRIu64 " %s %s %s\n", h.n, h.base,
                            yn(h.fermat), yn(h.strong), yn(h.midy));
        }
    });

    // psi
    auto* cmd_psi = app.add_subcommand("psi", "smallest strong/Midy pseudoprime to the first k prime bases");
    uint32_t p_k = 1;
    std::string kind_str = "psi";
    uint64_t p_limit = 0;
    unsigned p_jobs = 1;
    bool allow_long = false;
    cmd_psi->add_option("--k", p_k)->required();
    cmd_psi->add_option("--kind", kind_str)->check(CLI::IsMember({"psi", "psi-tilde"}));
    cmd_psi->add_option("--limit", p_limit)->required();
    cmd_psi->add_option("--jobs", p_jobs);
    cmd_psi->add_flag("--allow-long", allow_long, "permit scans past 10^8 candidates");
    cmd_psi->callback([&] {
        if (p_limit > 100000000ull && !allow_long)
            throw CLI::ValidationError("psi", "limit above 10^8 requires --allow-long");
        PsiOptions opts;
        opts.jobs = p_jobs;
        opts.budget = budget;
        if (p_limit > 100000000ull)
            opts.progress = [](uint64_t scanned) {
                std::cerr << "progress: " << scanned << " candidates scanned\n";
            };
        const PsiKind kind = kind_str == "psi" ? PsiKind::psi : PsiKind::psi_tilde;
        auto rec = psi_search(p_k, kind, p_limit, opts);
        if (rec.value)
            std::printf("%s_%u = %" PRIu64 "\n",
                        kind == PsiKind::psi ? "psi" : "psi~", p_k, *rec.value);
        else
            std::printf("%s_%u exceeds limit %" PRIu64 "\n",
                        kind == PsiKind::psi ? "psi" : "psi~", p_k, p_limit);
    });

    // verify-psi
    auto* cmd_vp = app.add_subcommand("verify-psi", "check the published psi_k values, k in 4..8");
    uint32_t v_k = 4;
    cmd_vp->add_option("--k", v_k)->required();
    cmd_vp->callback([&] {
        auto rep = verify_psi_bound(v_k, budget);
        std::printf("psi_%u = %" PRIu64 "\n", rep.k, rep.psi_value);
        std::printf("composite %s\n", yn(rep.composite));
        std::printf("strong_to_first_%u_primes %s\n", rep.k, yn(rep.strong_to_all));
        std::printf("midy_fails_at");
        for (uint64_t b : rep.midy_fail_bases) std::printf(" %" PRIu64, b);
        std::printf("\n");
        std::printf("bound_holds %s\n", yn(rep.bound_holds()));
    });

    // ratio
    auto* cmd_ratio = app.add_subcommand("ratio", "Midy share among strong pseudoprimes below a bound");
    uint64_t t_bound = 0, t_base = 2;
    unsigned t_jobs = 1;
    cmd_ratio->add_option("--bound", t_bound)->required();
    cmd_ratio->add_option("--base", t_base);
    cmd_ratio->add_option("--jobs", t_jobs);
    cmd_ratio->callback([&] {
        SieveOptions opts;
        opts.jobs = t_jobs;
        opts.budget = budget;
        auto rep = ratio_report(t_bound, t_base, opts);
        std::printf("strong %" PRIu64 "\n", rep.strong_count);
        std::printf("midy %" PRIu64 "\n", rep.midy_count);
        if (rep.ratio) std::printf("ratio %.6f\n", *rep.ratio);
        else std::printf("ratio undefined\n");
    });

    app.require_subcommand(1);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"midylab: Midy's property, pseudoprime hierarchy, cyclotomic generators, sieves"};
    try {
        run(app);
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors exit 1, --help exits 0
    } catch (const compute_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
