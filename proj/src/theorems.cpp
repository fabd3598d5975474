#include "skewdiv/theorems.hpp"

#include <chrono>
#include <stdexcept>

namespace skewdiv {

namespace {

long long exact_div(long long a, long long b) {
    if (a % b != 0) throw std::logic_error("closed_forms: expected an exact division");
    return a / b;
}

} // namespace

ClosedForms closed_forms(const Prime& prime) {
    const long long p = prime.value();
    if (p > 10000)
        throw std::invalid_argument("closed_forms: p too large for word-size closed forms");

    ClosedForms cf;
    cf.p = p;
    const long long p2 = p * p, p3 = p2 * p, p4 = p3 * p;

    cf.e[0] = exact_div(p * (2 * p2 + 1), 3);
    cf.e[1] = exact_div(p * (3 * p3 - 2 * p2 + 3 * p - 1), 3);
    cf.e[2] = exact_div(p * (p + 1) * (p + 2), 3);
    cf.e[3] = exact_div(p * (2 * p2 + 1), 3);
    cf.e[4] = 1;

    cf.det_sign = (p % 2 == 0) ? 1 : -1;
    cf.det_valuation = p4 + 2 * p3 + 3 * p2 + 2 * p + 4;

    cf.eig_mult_p4 = 1;
    cf.eig_mult_p = p4 + p2;
    cf.eig_mult_neg_p2 = p3 + p2 + p;

    cf.dim_s1 = exact_div(p * (p + 1) * (p + 2), 6);
    cf.dim_s2 = exact_div(p * (2 * p2 + 1), 3);
    cf.dim_s3 = cf.dim_s1;

    cf.count_l1 = p3 + p2 + p + 1;
    cf.count_l2 = (p2 + 1) * (p2 + p + 1);
    cf.count_l3 = cf.count_l1;

    cf.kernel_dim = exact_div(3 * p4 + p3 + 6 * p2 + 2 * p + 3, 3);

    cf.phi_rank = cf.dim_s1 + cf.dim_s2;
    cf.psi_rank = cf.dim_s2 + cf.dim_s3;
    cf.phi_plus_psi_rank = cf.dim_s1 + cf.dim_s2 + cf.dim_s3;

    // self-consistency
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::logic_error(std::string("closed_forms: inconsistent: ") + what);
    };
    long long esum = 0, wsum = 0;
    for (int i = 0; i < 5; ++i) {
        esum += cf.e[i];
        wsum += i * cf.e[i];
    }
    require(esum == cf.count_l2, "sum of multiplicities vs |L_2|");
    require(wsum == cf.det_valuation, "weighted multiplicities vs determinant valuation");
    require(cf.e[0] == cf.dim_s2, "e_0 vs dim S_2");
    require(cf.e[0] == cf.e[3], "e_0 vs e_3");
    require(cf.e[2] == 2 * cf.dim_s1, "e_2 vs 2 dim S_1");
    require(cf.kernel_dim == cf.count_l2 - cf.e[0], "kernel dimension vs |L_2| - e_0");
    require(1 + cf.eig_mult_p + cf.eig_mult_neg_p2 == cf.count_l2,
            "eigenvalue multiplicities vs |L_2|");
    require(cf.dim_s1 + cf.dim_s2 + cf.dim_s3 == cf.count_l1 - 1,
            "simple dimensions vs |L_1| - 1");
    return cf;
}

namespace {

void guard_p(const Prime& p, const VerifyOptions& opt) {
    if (p.value() > opt.guard_max_p && !opt.override_guard)
        throw ResourceGuardError("verification for p = " + std::to_string(p.value()) +
                                 " exceeds the default guard (p <= " +
                                 std::to_string(opt.guard_max_p) +
                                 "); pass the override to proceed");
}

IncidenceBuildOptions build_options(const VerifyOptions& opt) {
    return IncidenceBuildOptions{opt.family_guard, opt.threads};
}

} // namespace

VerificationReport verify_theorem_on(const IncidenceBundle& b, DivisorEngine engine,
                                     const VerifyOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const Prime prime = b.lines.prime();
    const long long p = prime.value();
    const ClosedForms cf = closed_forms(prime);
    const IntMatrix& a = b.eta22;
    const long long n = a.rows();

    VerificationReport rep(p);

    const bool run_det = opt.all_checks || n <= 1000;
    const bool run_counting = opt.all_checks || p <= 5;
    const bool run_spectrum = opt.all_checks || p <= 3;
    const bool run_filtration = opt.all_checks || p <= 5;

    // determinant first: its valuation feeds the p-local self-validation
    std::optional<mpz_class> det;
    if (run_det) det = determinant(a, opt.threads);

    PLocalOptions plopt;
    if (det) {
        mpz_class rest;
        plopt.known_vp_abs_det = static_cast<long long>(mpz_remove(
            rest.get_mpz_t(), det->get_mpz_t(), mpz_class(static_cast<long>(p)).get_mpz_t()));
    }

    std::optional<ElementaryDivisorProfile> snf_prof;
    std::optional<SnfResult> snf;
    if (engine == DivisorEngine::Bigint || engine == DivisorEngine::Both) {
        snf = smith_normal_form(a, false);
        snf_prof = profile_from_snf(*snf, prime);
    }
    std::optional<ElementaryDivisorProfile> plocal_prof;
    if (engine == DivisorEngine::PLocal || engine == DivisorEngine::Both) {
        plocal_prof = p_local_elementary_divisors(a, prime, plopt);
    }
    if (snf_prof && plocal_prof) {
        if (!(*snf_prof == *plocal_prof))
            throw std::logic_error("verify_theorem: the two divisor engines disagree");
        rep.add_flag("engine_agreement", true);
    }
    const ElementaryDivisorProfile& prof = snf_prof ? *snf_prof : *plocal_prof;

    for (int i = 0; i < 5; ++i) {
        long long div = 1;
        for (int k = 0; k < i; ++k) div *= p;
        rep.add_value("multiplicity[" + std::to_string(div) + "]", cf.e[i], prof.count(i));
    }
    rep.add_value("max_divisor_exponent", 4, prof.max_exponent());
    rep.add_value("profile_rank", n, prof.rank());

    if (run_filtration) {
        const std::vector<long long> dims = filtration_dims(a, prime, 5);
        // expected dim of the i-th layer is the tail sum e_i + e_{i+1} + ...
        long long expect[7] = {};
        for (int i = 4; i >= 0; --i) expect[i] = expect[i + 1] + cf.e[i];
        for (int i = 0; i <= 5; ++i)
            rep.add_value("filtration_dim[" + std::to_string(i) + "]", expect[i], dims[i]);
        bool diffs_ok = true;
        for (int i = 0; i < 5; ++i)
            if (dims[i] - dims[i + 1] != prof.count(i)) diffs_ok = false;
        rep.add_flag("filtration_differences_match_profile", diffs_ok);
    } else {
        rep.note_skipped("filtration");
    }

    if (det) {
        rep.add("determinant_sign", cf.det_sign > 0 ? "+" : "-",
                (*det > 0) ? "+" : (*det < 0 ? "-" : "0"),
                (cf.det_sign > 0) == (*det > 0) && *det != 0);
        mpz_class want;
        mpz_pow_ui(want.get_mpz_t(), mpz_class(static_cast<long>(p)).get_mpz_t(),
                   static_cast<unsigned long>(cf.det_valuation));
        mpz_class absdet;
        mpz_abs(absdet.get_mpz_t(), det->get_mpz_t());
        rep.add("determinant_abs_value", "p^" + std::to_string(cf.det_valuation),
                absdet == want ? "p^" + std::to_string(cf.det_valuation) : absdet.get_str(),
                absdet == want);
        if (snf) {
            mpz_class prod(1);
            for (const auto& d : snf->diagonal) prod *= d;
            rep.add("determinant_vs_snf_product", "equal",
                    prod == absdet ? "equal" : "different", prod == absdet);
        }
    } else {
        rep.note_skipped("determinant");
    }

    rep.add_flag("matrix_identity", verify_matrix_identity(a, prime));

    if (run_counting) {
        rep.merge("counting", verify_counting_lemmas(b));
    } else {
        rep.note_skipped("counting");
    }

    if (run_spectrum) {
        rep.merge("spectrum", char_poly_free_spectrum_check(a, prime));
    } else {
        rep.note_skipped("spectrum");
    }

    const auto t1 = std::chrono::steady_clock::now();
    rep.set_elapsed_ms(std::chrono::duration<double, std::milli>(t1 - t0).count());
    return rep;
}

VerificationReport verify_theorem(const Prime& p, DivisorEngine engine,
                                  const VerifyOptions& opt) {
    guard_p(p, opt);
    return verify_theorem_on(build_bundle(p, build_options(opt)), engine, opt);
}

VerificationReport verify_rank_structure_on(const IncidenceBundle& b,
                                            const VerifyOptions& opt) {
    (void)opt;
    const auto t0 = std::chrono::steady_clock::now();
    const Prime prime = b.lines.prime();
    const long long p = prime.value();
    const ClosedForms cf = closed_forms(prime);

    VerificationReport rep(p);

    const long long rank_a = rank_mod_p(b.eta22, prime);
    rep.add_value("p_rank_A", cf.dim_s2, rank_a);

    const long long rank_phi = rank_mod_p(b.phi, prime);
    rep.add_value("p_rank_phi", cf.phi_rank, rank_phi);

    const long long rank_psi = rank_mod_p(b.psi, prime);
    rep.add_value("p_rank_psi", cf.psi_rank, rank_psi);

    const long long rank_stack = rank_mod_p(IntMatrix::vstack(b.phi, b.psi), prime);
    rep.add_value("p_rank_phi_psi_stacked", cf.phi_plus_psi_rank, rank_stack);

    // socle containment: adjoining the rows of A changes neither row space
    rep.add_value("row_space_A_in_phi",
                  rank_phi, rank_mod_p(IntMatrix::vstack(b.phi, b.eta22), prime));
    rep.add_value("row_space_A_in_psi",
                  rank_psi, rank_mod_p(IntMatrix::vstack(b.psi, b.eta22), prime));

    rep.add_value("kernel_dim_eta22", cf.kernel_dim, cf.count_l2 - rank_a);

    auto col_sums_divisible = [&](const IntMatrix& m) {
        for (int j = 0; j < m.cols(); ++j)
            if (m.col_sum(j) % static_cast<long>(p) != 0) return false;
        return true;
    };
    rep.add_flag("phi_column_sums_mod_p", col_sums_divisible(b.phi));
    rep.add_flag("psi_column_sums_mod_p", col_sums_divisible(b.psi));

    const auto t1 = std::chrono::steady_clock::now();
    rep.set_elapsed_ms(std::chrono::duration<double, std::milli>(t1 - t0).count());
    return rep;
}

VerificationReport verify_rank_structure(const Prime& p, const VerifyOptions& opt) {
    guard_p(p, opt);
    return verify_rank_structure_on(build_bundle(p, build_options(opt)), opt);
}

bool multiplicity_polynomial_identities(VerificationReport* out) {
    bool ok = true;
    for (long long p : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL}) {
        const ClosedForms cf = closed_forms(Prime(p));
        const long long p2 = p * p, p3 = p2 * p, p4 = p3 * p;
        long long esum = 0, wsum = 0;
        for (int i = 0; i < 5; ++i) {
            esum += cf.e[i];
            wsum += i * cf.e[i];
        }
        struct Item {
            const char* name;
            long long want, got;
        } items[] = {
            {"sum_multiplicities", (p2 + 1) * (p2 + p + 1), esum},
            {"weighted_multiplicities", p4 + 2 * p3 + 3 * p2 + 2 * p + 4, wsum},
            {"e0_equals_e3", cf.e[0], cf.e[3]},
            {"dim_s1_equals_dim_s3", cf.dim_s1, cf.dim_s3},
            {"eigenvalue_multiplicities_sum", (p2 + 1) * (p2 + p + 1),
             1 + (p4 + p2) + (p3 + p2 + p)},
        };
        for (const auto& it : items) {
            if (it.want != it.got) ok = false;
            if (out)
                out->add_value("p=" + std::to_string(p) + "/" + it.name, it.want, it.got);
        }
    }
    return ok;
}

} // namespace skewdiv
