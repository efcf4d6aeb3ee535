#include "filtcone/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "filtcone/random.hpp"

namespace filtcone {

namespace {

const std::vector<double>& filtration_grid()
{
    static const std::vector<double> grid = [] {
        std::vector<double> g;
        for (int i = 0; i <= 12; ++i) g.push_back(0.5 * i);
        return g;
    }();
    return grid;
}

void require_cone_input(const ConeInput& in)
{
    if (!in.f.source || !in.f.target) throw InvalidInput("cone map has no source or target");
    require_valid(*in.f.source);
    require_valid(*in.f.target);
    if (in.shift < 0.0) throw InvalidInput("cone shift must be non-negative");
    FilteredMap at_shift = in.f;
    at_shift.shift = in.shift;
    const auto v = validate_map(at_shift);
    if (!v.ok()) throw InvalidInput("cone map is invalid: " + v.report.violations.front(), v.report.violations);
}

// Map between cones with blocks A_s -> A_t (aa), A_s -> B_t (ab), B_s -> B_t (bb).
gf2::Matrix cone_block(const gf2::Matrix& aa, const gf2::Matrix& ab, const gf2::Matrix& bb)
{
    const auto nbt = bb.rows();
    const auto nat = aa.rows();
    const auto nbs = bb.cols();
    const auto nas = aa.cols();
    gf2::Matrix m(nbt + nat, nbs + nas);
    for (std::size_t j = 0; j < nbs; ++j) bb.column(j).for_each_set([&](std::size_t i) { m.set(i, j); });
    for (std::size_t j = 0; j < nas; ++j) {
        ab.column(j).for_each_set([&](std::size_t i) { m.set(i, nbs + j); });
        aa.column(j).for_each_set([&](std::size_t i) { m.set(nbt + i, nbs + j); });
    }
    return m;
}

}  // namespace

FilteredComplex mapping_cone(const ConeInput& in, const std::string& prefix)
{
    require_cone_input(in);
    const auto& a = *in.f.source;
    const auto& b = *in.f.target;
    const auto nb = b.size();
    const auto n = nb + a.size();
    std::vector<Generator> gens = b.generators();
    gens.reserve(n);
    for (const auto& g : a.generators()) gens.push_back({prefix + g.id, g.filtration + in.shift});
    const auto d = cone_block(a.boundary(), in.f.matrix, b.boundary());
    return FilteredComplex("cone(" + a.name() + "->" + b.name() + ")", std::move(gens), d);
}

gf2::Matrix cone_inclusion(std::size_t a_size, std::size_t b_size)
{
    gf2::Matrix m(b_size + a_size, b_size);
    for (std::size_t i = 0; i < b_size; ++i) m.set(i, i);
    return m;
}

gf2::Matrix cone_projection(std::size_t a_size, std::size_t b_size)
{
    gf2::Matrix m(a_size, b_size + a_size);
    for (std::size_t i = 0; i < a_size; ++i) m.set(i, b_size + i);
    return m;
}

std::vector<NamedCheck> cone_bound_checks(const InvariantProfile& a, const InvariantProfile& b,
                                          const InvariantProfile& c, double s, double tol)
{
    std::vector<NamedCheck> out;
    out.push_back({"sigma_minus_lower",
                   check_le([&] { return min(b.sigma_minus - a.beta, a.sigma_minus + s); },
                            [&] { return c.sigma_minus; }, tol)});
    out.push_back({"sigma_plus_upper",
                   check_le([&] { return c.sigma_plus; },
                            [&] { return max(b.sigma_plus, a.sigma_plus + b.beta + s); }, tol)});
    out.push_back({"beta_upper", check_le([&] { return ExtendedReal(c.beta); },
                                          [&] {
                                              return ExtendedReal(a.beta + b.beta) +
                                                     max(0.0, a.sigma_plus - b.sigma_minus + s);
                                          },
                                          tol)});
    out.push_back({"rho_upper", check_le([&] { return c.rho; },
                                         [&] {
                                             return max(a.sigma_plus, b.sigma_plus) -
                                                    min(a.sigma_minus, b.sigma_minus) + (a.beta + b.beta + s);
                                         },
                                         tol)});

    // The aggregate forms assume both pieces have finite spectral range.
    const bool finite = !a.acyclic() && !b.acyclic();
    const auto sp = max(a.sigma_plus, b.sigma_plus);
    const auto sm = min(a.sigma_minus, b.sigma_minus);
    auto aggregate_check = [&](const char* name, auto lhs, auto rhs) {
        out.push_back({name, finite ? check_le(lhs, rhs, tol) : unmet()});
    };
    aggregate_check("sigma_plus_aggregate", [&] { return c.sigma_plus; }, [&] { return sp + (b.beta + s); });
    aggregate_check("sigma_minus_aggregate", [&] { return -c.sigma_minus; }, [&] { return -sm + a.beta; });
    aggregate_check("beta_aggregate", [&] { return ExtendedReal(c.beta); },
                    [&] { return sp - sm + (a.beta + b.beta + s); });
    aggregate_check("rho_tilde_rho", [&] { return c.rho; }, [&] { return sp - sm + (a.beta + b.beta + s); });
    aggregate_check("rho_tilde_beta", [&] { return ExtendedReal(c.beta); },
                    [&] { return sp - sm + (a.beta + b.beta + s); });
    return out;
}

RefilterResult refilter_cone(const FilteredMap& f, double s, double s_prime, double tol)
{
    if (s_prime < s) throw InvalidInput("refilter_cone needs s' >= s");
    RefilterResult r;
    r.cone = mapping_cone({f, s});
    r.refiltered = mapping_cone({f, s_prime});
    r.before = profile(r.cone);
    r.after = profile(r.refiltered);
    const double gap = s_prime - s;
    r.checks.push_back({"sigma_plus_shift", check_abs_diff(r.after.sigma_plus, r.before.sigma_plus, gap, tol)});
    r.checks.push_back({"sigma_minus_shift", check_abs_diff(r.after.sigma_minus, r.before.sigma_minus, gap, tol)});
    r.checks.push_back({"rho_shift", check_abs_diff(r.after.rho, r.before.rho, 2 * gap, tol)});
    r.checks.push_back({"beta_shift", check_abs_diff(r.after.beta, r.before.beta, 2 * gap, tol)});
    return r;
}

ReassocResult reassociate(const FilteredComplex& e, const ConeInput& inner, const FilteredMap& g, double s_g,
                          double tol)
{
    ReassocResult r;
    const auto inner_cone = mapping_cone(inner, kInnerAttachmentPrefix);
    if (!g.target || !g.target->same_as(inner_cone))
        throw InvalidInput("reassociate: g must target the inner cone [F -> G]");
    if (!g.source || !g.source->same_as(e)) throw InvalidInput("reassociate: g must start at E");
    const auto e_ptr = g.source;
    const auto& f_cplx = *inner.f.source;
    const auto& g_cplx = *inner.f.target;
    const auto nf = f_cplx.size();
    const auto ng = g_cplx.size();
    const std::string outer_prefix = std::string(kInnerAttachmentPrefix) + "E.";
    r.nested_right = mapping_cone({g, s_g}, outer_prefix);

    const double s_f = inner.shift;
    r.g_prime_shift = std::max(0.0, s_g - s_f);

    // g' = F-component of g, and f' = (f on F, G-component of g on E).
    gf2::Matrix g_prime(nf, e.size());
    gf2::Matrix g_to_g(ng, e.size());
    for (std::size_t j = 0; j < e.size(); ++j) {
        g.matrix.column(j).for_each_set([&](std::size_t i) {
            if (i < ng) g_to_g.set(i, j);
            else g_prime.set(i - ng, j);
        });
    }
    FilteredMap gp({e_ptr, inner.f.source, r.g_prime_shift, g_prime});
    const auto gp_check = validate_map(gp);
    if (!gp_check.ok()) throw std::logic_error("reassociate: F-component of g fails: " + gp_check.report.violations.front());
    const auto middle = share(mapping_cone({gp, r.g_prime_shift}, "E."));

    gf2::Matrix f_prime(ng, middle->size());
    for (std::size_t j = 0; j < nf; ++j) f_prime.column(j) = inner.f.matrix.column(j);
    for (std::size_t j = 0; j < e.size(); ++j) f_prime.column(nf + j) = g_to_g.column(j);
    FilteredMap fp({middle, inner.f.target, s_f, std::move(f_prime)});
    r.nested_left = mapping_cone({fp, s_f}, kInnerAttachmentPrefix);

    const auto& right = r.nested_right;
    const auto& left = r.nested_left;
    bool same_ids = right.size() == left.size();
    for (std::size_t i = 0; same_ids && i < right.size(); ++i)
        same_ids = right.generator(i).id == left.generator(i).id;
    r.same_chain_complex = same_ids && right.boundary() == left.boundary();
    r.identity_shift = 0.0;
    for (std::size_t i = 0; same_ids && i < right.size(); ++i)
        r.identity_shift = std::max(r.identity_shift, left.filtration(i) - right.filtration(i));

    r.right_profile = profile(right);
    r.left_profile = profile(left);
    const double gap = std::abs(s_f - s_g);
    r.checks.push_back({"same_chain_complex", {r.same_chain_complex ? Outcome::pass : Outcome::fail, 0.0, 0.0}});
    r.checks.push_back({"identity_shift", check_le(r.identity_shift, std::max(0.0, s_f - s_g), tol)});
    r.checks.push_back({"sigma_plus_reassoc", check_abs_diff(r.left_profile.sigma_plus, r.right_profile.sigma_plus, gap, tol)});
    r.checks.push_back({"sigma_minus_reassoc", check_abs_diff(r.left_profile.sigma_minus, r.right_profile.sigma_minus, gap, tol)});
    r.checks.push_back({"beta_reassoc", check_abs_diff(r.left_profile.beta, r.right_profile.beta, 2 * gap, tol)});
    return r;
}

// -- cone equivalence ------------------------------------------------------------

namespace {

using gf2::Matrix;

Matrix eye(std::size_t n) { return Matrix::identity(n); }

// D x = d_target x + x d_source
Matrix dcomm(const Matrix& x, const Matrix& d_source, const Matrix& d_target) { return d_target * x + x * d_source; }

struct ConeSide {
    const Matrix& da;
    const Matrix& db;
    const Matrix& f;  // A -> B
};

struct Inverses {
    const Matrix& psi_bar;
    const Matrix& phi_bar;
    const Matrix& k_s;
    const Matrix& k_t;
    const Matrix& r_s;
};

struct ConeMaps {
    Matrix h_bar;   // A_t -> B_s
    Matrix fwd;     // cone_s -> cone_t
    Matrix back;    // cone_t -> cone_s
    Matrix homotopy;  // on cone_s
};

// From (psi, phi, h) with phi f_s + f_t psi = D h and homotopy inverses,
// build the cone map, a homotopy inverse, and the homotopy back to the identity.
ConeMaps cone_maps(const ConeSide& src, const ConeSide& tgt, const Matrix& psi, const Matrix& phi, const Matrix& h,
                   const Inverses& inv)
{
    const Matrix h0 = inv.r_s * src.f * inv.psi_bar + inv.phi_bar * h * inv.psi_bar + inv.phi_bar * tgt.f * inv.k_t;
    const Matrix w = inv.phi_bar * h + h0 * psi + src.f * inv.k_s + inv.r_s * src.f;
    ConeMaps out;
    out.h_bar = h0 + w * inv.psi_bar;
    out.fwd = cone_block(psi, h, phi);
    out.back = cone_block(inv.psi_bar, out.h_bar, inv.phi_bar);
    out.homotopy = cone_block(inv.k_s, w * inv.k_s, inv.r_s);
    return out;
}

}  // namespace

std::vector<std::string> check_cone_equivalence_input(const ConeEquivalenceInput& in)
{
    std::vector<std::string> bad;
    const auto& a1 = *in.f1.source;
    const auto& b1 = *in.f1.target;
    const auto& a2 = *in.f2.source;
    const auto& b2 = *in.f2.target;
    auto chain = [&](const char* name, const FilteredMap& m) {
        const auto v = validate_map(m);
        for (const auto& msg : v.report.violations) bad.push_back(std::string(name) + ": " + msg);
    };
    auto linear = [&](const char* name, const FilteredLinearMap& m) {
        const auto v = validate_linear_map(m);
        for (const auto& msg : v.report.violations) bad.push_back(std::string(name) + ": " + msg);
    };
    chain("f'", in.f1);
    chain("f''", in.f2);
    chain("psi'", in.psi1);
    chain("phi'", in.phi1);
    chain("psi''", in.psi2);
    chain("phi''", in.phi2);
    linear("h'", in.h1);
    linear("k'", in.k1);
    linear("k''", in.k2);
    linear("r'", in.r1);
    linear("r''", in.r2);
    if (!bad.empty()) return bad;

    auto endpoints = [&](const char* name, const FilteredLinearMap& m, const FilteredComplex& s,
                         const FilteredComplex& t) {
        if (!m.source->same_as(s) || !m.target->same_as(t)) bad.push_back(std::string(name) + " has the wrong endpoints");
    };
    endpoints("psi'", in.psi1, a1, a2);
    endpoints("phi'", in.phi1, b1, b2);
    endpoints("h'", in.h1, a1, b2);
    endpoints("psi''", in.psi2, a2, a1);
    endpoints("phi''", in.phi2, b2, b1);
    endpoints("k'", in.k1, a1, a1);
    endpoints("k''", in.k2, a2, a2);
    endpoints("r'", in.r1, b1, b1);
    endpoints("r''", in.r2, b2, b2);
    if (!bad.empty()) return bad;

    if (in.phi1.matrix * in.f1.matrix + in.f2.matrix * in.psi1.matrix !=
        dcomm(in.h1.matrix, a1.boundary(), b2.boundary()))
        bad.emplace_back("phi' f' - f'' psi' = dh' + h'd");
    if (in.psi2.matrix * in.psi1.matrix + eye(a1.size()) != dcomm(in.k1.matrix, a1.boundary(), a1.boundary()))
        bad.emplace_back("psi'' psi' - id = dk' + k'd");
    if (in.psi1.matrix * in.psi2.matrix + eye(a2.size()) != dcomm(in.k2.matrix, a2.boundary(), a2.boundary()))
        bad.emplace_back("psi' psi'' - id = dk'' + k''d");
    if (in.phi2.matrix * in.phi1.matrix + eye(b1.size()) != dcomm(in.r1.matrix, b1.boundary(), b1.boundary()))
        bad.emplace_back("phi'' phi' - id = dr' + r'd");
    if (in.phi1.matrix * in.phi2.matrix + eye(b2.size()) != dcomm(in.r2.matrix, b2.boundary(), b2.boundary()))
        bad.emplace_back("phi' phi'' - id = dr'' + r''d");
    for (const auto* other : {&in.f1, &in.f2, &in.psi1, &in.phi1}) {
        if (other->shift > in.h1.shift) {
            bad.emplace_back("shift of h' is below another shift in the square");
            break;
        }
    }
    return bad;
}

ConeEquivalenceResult cone_equivalence(const ConeEquivalenceInput& in)
{
    const auto bad = check_cone_equivalence_input(in);
    if (!bad.empty()) throw InvalidInput("cone equivalence input: " + bad.front(), bad);

    ConeEquivalenceResult out;
    const auto& a1 = *in.f1.source;
    const auto& b1 = *in.f1.target;
    const auto& a2 = *in.f2.source;
    const auto& b2 = *in.f2.target;
    auto cone1 = share(mapping_cone({in.f1, in.f1.shift}));
    auto cone2 = share(mapping_cone({in.f2, in.f2.shift}));

    const ConeSide side1{a1.boundary(), b1.boundary(), in.f1.matrix};
    const ConeSide side2{a2.boundary(), b2.boundary(), in.f2.matrix};
    const auto step1 = cone_maps(side1, side2, in.psi1.matrix, in.phi1.matrix, in.h1.matrix,
                                 {in.psi2.matrix, in.phi2.matrix, in.k1.matrix, in.k2.matrix, in.r1.matrix});
    const auto step2 = cone_maps(side2, side1, in.psi2.matrix, in.phi2.matrix, step1.h_bar,
                                 {in.psi1.matrix, in.phi1.matrix, in.k2.matrix, in.k1.matrix, in.r2.matrix});
    const Matrix& fwd = step1.fwd;
    const Matrix& back = step1.back;
    // fwd back = 1 + D H'' where H'' = H''' fwd back + fwd''' H' back + H'''
    const Matrix h_second =
        step2.homotopy * fwd * back + step2.back * step1.homotopy * back + step2.homotopy;

    const auto& d1 = cone1->boundary();
    const auto& d2 = cone2->boundary();
    auto& failed = out.failed_identities;
    if (!dcomm(fwd, d1, d2).is_zero()) failed.emplace_back("forward cone map is not a chain map");
    if (!dcomm(back, d2, d1).is_zero()) failed.emplace_back("backward cone map is not a chain map");
    if (back * fwd + eye(cone1->size()) != dcomm(step1.homotopy, d1, d1))
        failed.emplace_back("backward forward - id = dH' + H'd");
    if (fwd * back + eye(cone2->size()) != dcomm(h_second, d2, d2))
        failed.emplace_back("forward backward - id = dH'' + H''d");
    if (in.phi2.matrix * in.f2.matrix + in.f1.matrix * in.psi2.matrix != dcomm(step1.h_bar, a2.boundary(), b1.boundary()))
        failed.emplace_back("phi'' f'' - f' psi'' = dh'' + h''d");
    const auto in1 = cone_inclusion(a1.size(), b1.size());
    const auto in2 = cone_inclusion(a2.size(), b2.size());
    const auto pr1 = cone_projection(a1.size(), b1.size());
    const auto pr2 = cone_projection(a2.size(), b2.size());
    if (fwd * in1 != in2 * in.phi1.matrix) failed.emplace_back("forward map commutes with inclusion");
    if (pr2 * fwd != in.psi1.matrix * pr1) failed.emplace_back("forward map commutes with projection");
    if (back * in2 != in1 * in.phi2.matrix) failed.emplace_back("backward map commutes with inclusion");
    if (pr1 * back != in.psi2.matrix * pr2) failed.emplace_back("backward map commutes with projection");

    out.forward = {cone1, cone2, 0.0, fwd};
    out.backward = {cone2, cone1, 0.0, back};
    out.homotopy1 = {cone1, cone1, 0.0, step1.homotopy};
    out.homotopy2 = {cone2, cone2, 0.0, h_second};
    out.h2 = {in.f2.source, in.f1.target, 0.0, step1.h_bar};
    for (auto* m : {&out.forward, &out.backward, &out.homotopy1, &out.homotopy2, &out.h2}) m->shift = minimal_shift(*m);
    out.measured_shifts = {{"forward", out.forward.shift},
                           {"backward", out.backward.shift},
                           {"homotopy'", out.homotopy1.shift},
                           {"homotopy''", out.homotopy2.shift},
                           {"h''", out.h2.shift}};
    for (const auto& [name, s] : out.measured_shifts) out.max_measured_shift = std::max(out.max_measured_shift, s);
    for (const auto* m : std::initializer_list<const FilteredLinearMap*>{&in.f1, &in.f2, &in.psi1, &in.phi1, &in.h1,
                                                                         &in.psi2, &in.phi2, &in.k1, &in.k2, &in.r1,
                                                                         &in.r2})
        out.declared_shift_sum += m->shift;
    if (out.declared_shift_sum > 0.0) out.ratio = out.max_measured_shift / out.declared_shift_sum;
    else if (out.max_measured_shift > 0.0) out.ratio = std::numeric_limits<double>::infinity();
    out.cone1 = *cone1;
    out.cone2 = *cone2;
    return out;
}

ConeEquivalenceInput random_cone_square(std::size_t max_generators, std::uint64_t seed)
{
    Rng rng(seed);
    const auto& grid = filtration_grid();
    auto gens = [&] { return 1 + rng.below(std::max<std::size_t>(max_generators, 1)); };
    auto a1 = share(random_complex(gens(), grid, 0.4, rng.next()));
    auto b1 = share(random_complex(gens(), grid, 0.4, rng.next()));
    const double s_f1 = rng.grid(0.0, 2.0);
    auto f1 = random_filtered_map(a1, b1, s_f1, rng.next());

    const auto wa = random_homotopy_equivalence(a1, rng.below(3), rng.grid(0.0, 1.5), rng.next());
    const auto wb = random_homotopy_equivalence(b1, rng.below(3), rng.grid(0.0, 1.5), rng.next());
    const auto& a2 = wa.target;
    const auto& b2 = wb.target;

    // f'' = phi' f' psi'' + D lambda, so the square commutes up to h' = phi' f' k' + lambda psi'.
    const auto lambda = random_linear_map(a2, b2, rng.grid(0.0, 1.0), 0.25, rng);
    FilteredMap f2({a2, b2, 0.0,
                    wb.forward.matrix * f1.matrix * wa.backward.matrix + commutator(lambda).matrix});
    f2.shift = minimal_shift(f2);
    FilteredLinearMap h1{a1, b2, 0.0, wb.forward.matrix * f1.matrix * wa.source_homotopy.matrix +
                                          lambda.matrix * wa.forward.matrix};
    h1.shift = std::max({minimal_shift(h1), f1.shift, f2.shift, wa.shift, wb.shift});

    ConeEquivalenceInput in;
    in.f1 = f1;
    in.f2 = std::move(f2);
    in.psi1 = wa.forward;
    in.psi2 = wa.backward;
    in.k1 = wa.source_homotopy;
    in.k2 = wa.target_homotopy;
    in.phi1 = wb.forward;
    in.phi2 = wb.backward;
    in.r1 = wb.source_homotopy;
    in.r2 = wb.target_homotopy;
    in.h1 = std::move(h1);
    return in;
}

// -- iterated cones --------------------------------------------------------------

std::vector<FilteredComplex> iterated_cone(const IteratedConeSpec& spec)
{
    if (spec.attachments.empty()) throw InvalidInput("iterated cone needs at least A_0");
    if (spec.maps.size() + 1 != spec.attachments.size() || spec.shifts.size() != spec.maps.size())
        throw InvalidInput("iterated cone: need r maps and r shifts for r+1 attachments");
    std::vector<FilteredComplex> partial;
    partial.reserve(spec.attachments.size());
    require_valid(spec.attachments.front());
    partial.push_back(spec.attachments.front());
    for (std::size_t i = 1; i < spec.attachments.size(); ++i) {
        auto source = share(spec.attachments[i]);
        auto target = share(partial.back());
        const double s = spec.shifts[i - 1];
        const auto& m = spec.maps[i - 1];
        if (m.rows() != target->size() || m.cols() != source->size())
            throw InvalidInput("iterated cone stage " + std::to_string(i) + ": map has the wrong shape");
        FilteredMap phi({source, target, s, m});
        try {
            partial.push_back(mapping_cone({phi, s}, "A" + std::to_string(i) + "."));
        } catch (const InvalidInput& e) {
            throw InvalidInput("iterated cone stage " + std::to_string(i) + ": " + e.what(), e.violations());
        }
    }
    return partial;
}

IteratedBound iterated_bound(std::size_t r, const AggregateProfile& tilde, const std::vector<double>& betas,
                             const std::vector<double>& shifts)
{
    if (r == 0) throw std::invalid_argument("iterated_bound needs r >= 1");
    if (betas.size() != r + 1 || shifts.size() != r)
        throw std::invalid_argument("iterated_bound needs r+1 boundary depths and r shifts");
    if (!tilde.rho_tilde.is_finite()) throw std::invalid_argument("iterated_bound needs a finite aggregate range");

    // Linear forms over (rho~, beta_0..beta_r, s_1..s_r); sigma~- is normalized to 0.
    const std::size_t vars = 1 + (r + 1) + r;
    using Form = std::vector<double>;
    auto unit = [&](std::size_t k) {
        Form f(vars, 0.0);
        f[k] = 1.0;
        return f;
    };
    auto sum = [](std::initializer_list<const Form*> terms) {
        Form out((*terms.begin())->size(), 0.0);
        for (const auto* t : terms)
            for (std::size_t k = 0; k < out.size(); ++k) out[k] += (*t)[k];
        return out;
    };
    const auto beta = [&](std::size_t i) { return unit(1 + i); };
    const auto shift = [&](std::size_t i) { return unit(1 + (r + 1) + (i - 1)); };

    Form upper = unit(0);         // bound on sigma+(C_i) - sigma~-
    Form lower(vars, 0.0);        // bound on sigma~- - sigma-(C_i)
    Form depth = beta(0);         // bound on beta(C_i)
    for (std::size_t i = 1; i <= r; ++i) {
        const auto b = beta(i);
        const auto s = shift(i);
        Form next_upper = sum({&upper, &depth, &s});
        Form next_lower = sum({&lower, &b});
        Form next_depth = sum({&b, &depth, &upper, &lower, &s});
        upper = std::move(next_upper);
        lower = std::move(next_lower);
        depth = std::move(next_depth);
    }
    const Form rho = sum({&upper, &lower});

    IteratedBound out;
    out.rho_coefficient = rho[0];
    out.beta_coefficients.assign(rho.begin() + 1, rho.begin() + 1 + static_cast<std::ptrdiff_t>(r + 1));
    out.shift_coefficients.assign(rho.begin() + 1 + static_cast<std::ptrdiff_t>(r + 1), rho.end());
    out.constants = {r, out.rho_coefficient,
                     *std::max_element(out.beta_coefficients.begin(), out.beta_coefficients.end()),
                     *std::max_element(out.shift_coefficients.begin(), out.shift_coefficients.end())};

    const double rt = tilde.rho_tilde.value();
    double unrolled = out.rho_coefficient * rt;
    for (std::size_t i = 0; i <= r; ++i) unrolled += out.beta_coefficients[i] * betas[i];
    for (std::size_t i = 0; i < r; ++i) unrolled += out.shift_coefficients[i] * shifts[i];
    out.unrolled = unrolled;
    out.bound = out.constants.a * rt + out.constants.b * std::accumulate(betas.begin(), betas.end(), 0.0) +
                out.constants.e * std::accumulate(shifts.begin(), shifts.end(), 0.0);
    return out;
}

BoundConstants bound_constants(std::size_t r)
{
    return iterated_bound(r, {0.0, 0.0, 0.0}, std::vector<double>(r + 1, 0.0), std::vector<double>(r, 0.0)).constants;
}

IteratedConeSpec random_iterated_spec(std::size_t r, std::size_t max_generators, std::uint64_t seed)
{
    Rng rng(seed);
    const auto& grid = filtration_grid();
    IteratedConeSpec spec;
    for (std::size_t i = 0; i <= r; ++i)
        spec.attachments.push_back(random_complex(1 + rng.below(std::max<std::size_t>(max_generators, 1)), grid, 0.4,
                                                  rng.next()));
    auto partial = share(spec.attachments.front());
    for (std::size_t i = 1; i <= r; ++i) {
        const double s = rng.grid(0.0, 2.0);
        auto source = share(spec.attachments[i]);
        auto phi = random_filtered_map(source, partial, s, rng.next());
        spec.maps.push_back(phi.matrix);
        spec.shifts.push_back(s);
        partial = share(mapping_cone({phi, s}, "A" + std::to_string(i) + "."));
    }
    return spec;
}

// -- tensor product --------------------------------------------------------------

FilteredComplex tensor_product(const FilteredComplex& a, const FilteredComplex& b)
{
    require_valid(a);
    require_valid(b);
    const auto na = a.size();
    const auto nb = b.size();
    std::vector<Generator> gens;
    gens.reserve(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            gens.push_back({a.generator(i).id + "*" + b.generator(j).id, a.filtration(i) + b.filtration(j)});
    gf2::Matrix d(na * nb, na * nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            const auto col = i * nb + j;
            a.boundary().column(i).for_each_set([&](std::size_t k) { d.flip(k * nb + j, col); });
            b.boundary().column(j).for_each_set([&](std::size_t k) { d.flip(i * nb + k, col); });
        }
    }
    return FilteredComplex(a.name() + "*" + b.name(), std::move(gens), std::move(d));
}

}  // namespace filtcone
