#pragma once

/// Verification suites: each check evaluates the two sides of one identity
/// over a deterministic sample of points and aggregates residual statistics
/// into a ResidualReport.
///
/// Residual normalization: rel_max = max_abs / (1 + scale), where scale is
/// the largest magnitude of the checked field over the sample.  The floor
/// of 1 keeps the ratio meaningful near zeros of the field.  The theorem
/// checks normalize by the first-derivative-route Laplacian instead, since
/// that is the quantity whose regularity the theorem asserts (and it
/// vanishes identically for the scalar controls, so their defect is
/// reported unshrunk).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fueter/engine.hpp"
#include "fueter/fields.hpp"
#include "fueter/operators.hpp"

namespace fueter {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Sampling

struct Box {
    double t_min = -1.5, t_max = 1.5;
    double r_min = 0.4, r_max = 2.5;
    double beta_min = 0.35, beta_max = pi - 0.35;
};

enum class SampleMode { random, grid };

struct SamplingPlan {
    Box box;
    int n = 256; // sample count (points per axis in grid mode)
    std::uint64_t rng_seed = 12345;
    SampleMode mode = SampleMode::random;
};

inline void validate(const SamplingPlan& plan) {
    const Box& b = plan.box;
    if (!(b.t_min < b.t_max)) throw config_error("plan: empty t range");
    if (!(b.r_min > 0.0)) throw config_error("plan: r_min must be > 0");
    if (!(b.r_min < b.r_max)) throw config_error("plan: empty r range");
    if (!(b.beta_min > 0.0 && b.beta_max < pi && b.beta_min < b.beta_max))
        throw config_error("plan: beta range must satisfy 0 < beta_min < beta_max < pi");
    if (plan.n < 1) throw config_error("plan: n must be >= 1");
}

// Uniform [0,1) from the top 53 bits; bit-reproducible across platforms.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline constexpr double kPoleRejectRadius = 0.15;

inline bool near_seed_pole(const SphericalPoint& p, const std::vector<Complex>& poles) {
    for (const Complex& z0 : poles)
        if (std::abs(Complex(p.t, p.r) - z0) < kPoleRejectRadius) return true;
    return false;
}

/// Deterministic point list; points near a seed-plane pole of the target
/// field are rejected (and resampled in random mode).
inline std::vector<SphericalPoint> sample_points(const SamplingPlan& plan,
                                                 const std::vector<Complex>& poles = {}) {
    validate(plan);
    std::vector<SphericalPoint> pts;
    if (plan.mode == SampleMode::grid) {
        const int n = plan.n;
        auto axis = [n](double lo, double hi, bool closed) {
            std::vector<double> xs;
            for (int i = 0; i < n; ++i) {
                if (n == 1) {
                    xs.push_back(0.5 * (lo + hi));
                } else if (closed) {
                    xs.push_back(lo + (hi - lo) * i / (n - 1));
                } else {
                    xs.push_back(lo + (hi - lo) * i / n);
                }
            }
            return xs;
        };
        for (double t : axis(plan.box.t_min, plan.box.t_max, true))
            for (double r : axis(plan.box.r_min, plan.box.r_max, true))
                for (double a : axis(0.0, two_pi, false))
                    for (double b : axis(plan.box.beta_min, plan.box.beta_max, true)) {
                        SphericalPoint p{t, r, a, b, false};
                        if (!near_seed_pole(p, poles)) pts.push_back(p);
                    }
    } else {
        std::mt19937_64 rng(plan.rng_seed);
        long rejected = 0;
        while (static_cast<int>(pts.size()) < plan.n) {
            SphericalPoint p;
            p.t = plan.box.t_min + (plan.box.t_max - plan.box.t_min) * uniform01(rng);
            p.r = plan.box.r_min + (plan.box.r_max - plan.box.r_min) * uniform01(rng);
            p.alpha = two_pi * uniform01(rng);
            p.beta = plan.box.beta_min + (plan.box.beta_max - plan.box.beta_min) * uniform01(rng);
            if (near_seed_pole(p, poles)) {
                if (++rejected > 10000L * plan.n)
                    throw config_error("sample_points: pole rejection exhausted the box");
                continue;
            }
            pts.push_back(p);
        }
    }
    if (pts.empty()) throw config_error("sample_points: empty sample");
    return pts;
}

// ---------------------------------------------------------------------------
// Residual aggregation

struct ResidualStats {
    double max_abs = 0.0;
    double sum_abs = 0.0;
    double scale = 0.0;
    long count = 0;
    SphericalPoint worst{};

    void add(const SphericalPoint& p, double resid, double magnitude) {
        if (!std::isfinite(resid) || !std::isfinite(magnitude))
            throw numeric_error("non-finite residual encountered");
        if (count == 0 || resid > max_abs) {
            max_abs = resid;
            worst = p;
        }
        sum_abs += resid;
        scale = std::max(scale, magnitude);
        ++count;
    }

    // Associative merge; ties keep the left operand's worst point, so any
    // in-order partitioning reproduces the sequential result.
    void merge(const ResidualStats& o) {
        if (o.count == 0) return;
        if (count == 0 || o.max_abs > max_abs) {
            max_abs = o.max_abs;
            worst = o.worst;
        }
        sum_abs += o.sum_abs;
        scale = std::max(scale, o.scale);
        count += o.count;
    }
};

struct ResidualReport {
    std::string check;
    std::string field;
    std::string backend;
    double h = 0.0;
    long n = 0;
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double rel_max = 0.0;
    SphericalPoint worst{};
    double tol = 0.0;
    bool pass = false;
    std::string note;
};

inline ResidualReport make_report(std::string check, std::string field, std::string backend,
                                  double h, const ResidualStats& s, double tol,
                                  std::string note = "") {
    if (s.count == 0) throw config_error("check '" + check + "': empty sample");
    ResidualReport r;
    r.check = std::move(check);
    r.field = std::move(field);
    r.backend = std::move(backend);
    r.h = h;
    r.n = s.count;
    r.max_abs = s.max_abs;
    r.mean_abs = s.sum_abs / static_cast<double>(s.count);
    r.rel_max = s.max_abs / (1.0 + s.scale);
    r.worst = s.worst;
    r.tol = tol;
    r.pass = r.rel_max <= tol;
    r.note = std::move(note);
    return r;
}

inline ResidualReport make_report(std::string check, std::string field, const DerivativeEngine& e,
                                  const ResidualStats& s, double tol, std::string note = "") {
    return make_report(std::move(check), std::move(field), e.descriptor(), e.reported_h(), s, tol,
                       std::move(note));
}

// ---------------------------------------------------------------------------
// Tolerances
//
// Pinned per check for the analytic backend; FD backends floor the
// tolerance at their composite noise budget (fd4: 1e-6, fd2: 1e-4).

inline double check_tolerance(const std::string& check_id, const DerivativeEngine& e) {
    if (check_id == "frame_identities") return 1e-12; // closed forms, engine-free
    double base = 1e-9;
    if (check_id == "harmonic_v_over_r" || check_id == "theorem_dbar" ||
        check_id == "commutation" || check_id == "scalar_commutation")
        base = 1e-6;
    else if (check_id == "angular_laplace")
        base = 1e-7;
    else if (check_id == "second_angular" || check_id == "angular_iota_product")
        base = 1e-8;
    else if (check_id == "theorem" || check_id == "theorem_direct")
        base = 1e-4;
    else if (check_id == "mercator_cr")
        base = 1e-10;
    double floor = 0.0;
    if (e.backend == Backend::fd4) floor = 1e-6;
    if (e.backend == Backend::fd2) floor = 1e-4;
    return std::max(base, floor);
}

// ---------------------------------------------------------------------------
// Field checks

/// D_l f = -2v/r (and D_r f = -2v/r on axial fields).
inline ResidualReport check_condition(const StructuredField& f, const SamplingPlan& plan,
                                      const DerivativeEngine& e, std::string check_id = "condition") {
    const QuatField F = as_quat_field(f);
    ResidualStats st;
    for (const SphericalPoint& p : sample_points(plan, f.seed_poles)) {
        const Quaternion target{-2.0 * f.v.value(p) / p.r};
        double resid = (fueter_left(F, p, e) - target).norm();
        if (f.axial) resid = std::max(resid, (fueter_right(F, p, e) - target).norm());
        st.add(p, resid, F.value(p).norm());
    }
    return make_report(std::move(check_id), f.name, e, st, check_tolerance("condition", e));
}

/// (d/dt + iota d/dr) f = 0.
inline ResidualReport check_holomorphy_tr(const StructuredField& f, const SamplingPlan& plan,
                                          const DerivativeEngine& e) {
    const QuatField F = as_quat_field(f);
    ResidualStats st;
    for (const SphericalPoint& p : sample_points(plan, f.seed_poles)) {
        const Quaternion res =
            F.partial(p, Var::t, e) + iota_at(p.alpha, p.beta) * F.partial(p, Var::r, e);
        st.add(p, res.norm(), F.value(p).norm());
    }
    return make_report("holomorphy_tr", f.name, e, st, check_tolerance("holomorphy_tr", e));
}

/// Angular condition in all three equivalent forms:
///   ang_l f = 2v,  ang_l u = iota ang_l v,  ang_l(iota f) = 2u.
inline ResidualReport check_angular_condition(const StructuredField& f, const SamplingPlan& plan,
                                              const DerivativeEngine& e) {
    const QuatField F = as_quat_field(f);
    const QuatField iF = left_iota_product(F);
    ResidualStats st;
    for (const SphericalPoint& p : sample_points(plan, f.seed_poles)) {
        const Frame fr = frame_at(p.alpha, p.beta);
        const double r14 =
            (angular_derivative(F, p, e) - Quaternion{2.0 * f.v.value(p)}).norm();
        const double r21 = (angular_derivative_scalar(f.u, p, e) -
                            fr.iota * angular_derivative_scalar(f.v, p, e))
                               .norm();
        const double r23 =
            (angular_derivative(iF, p, e) - Quaternion{2.0 * f.u.value(p)}).norm();
        st.add(p, std::max({r14, r21, r23}), F.value(p).norm());
    }
    return make_report("angular_condition", f.name, e, st,
                       check_tolerance("angular_condition", e));
}

namespace detail {

inline ResidualReport check_cr_core(const ScalarField& u, const ScalarField& v,
                                    const std::vector<Complex>& poles, std::string check_id,
                                    std::string label, const SamplingPlan& plan,
                                    const DerivativeEngine& e) {
    ResidualStats st;
    for (const SphericalPoint& p : sample_points(plan, poles)) {
        const double sb = std::sin(p.beta);
        const double ua = first_partial(u, p, Var::alpha, e);
        const double ub = first_partial(u, p, Var::beta, e);
        const double va = first_partial(v, p, Var::alpha, e);
        const double vb = first_partial(v, p, Var::beta, e);
        const double r15 = std::abs(ua / sb - vb);
        const double r16 = std::abs(va / sb + ub);
        st.add(p, std::max(r15, r16), std::max(std::abs(u.value(p)), std::abs(v.value(p))));
    }
    const double tol = check_tolerance(check_id, e);
    return make_report(std::move(check_id), std::move(label), e, st, tol);
}

} // namespace detail

/// Spherical Cauchy-Riemann system on (u, v) of a structured field.
inline ResidualReport check_cr_system(const StructuredField& f, const SamplingPlan& plan,
                                      const DerivativeEngine& e) {
    return detail::check_cr_core(f.u, f.v, f.seed_poles, "cr_system", f.name, plan, e);
}

/// Same system on a bare angular pair (A, B).
inline ResidualReport check_cr_system(const AngularPair& pair, const SamplingPlan& plan,
                                      const DerivativeEngine& e,
                                      std::string check_id = "mercator_cr") {
    return detail::check_cr_core(pair.A, pair.B, {}, std::move(check_id), pair.name, plan, e);
}

/// The time derivative of a condition field satisfies the condition again.
inline ResidualReport check_t_closure(const StructuredField& f, const SamplingPlan& plan,
                                      const DerivativeEngine& e) {
    if (!f.time_derivative)
        throw std::domain_error("check_t_closure: field '" + f.name +
                                "' exposes no time-derivative field");
    const StructuredField ft = f.time_derivative();
    ResidualReport r = check_condition(ft, plan, e, "t_closure");
    r.field = f.name;
    return r;
}

/// lap(v/r) = 0 for condition fields.
inline ResidualReport check_harmonic_v_over_r(const StructuredField& f, const SamplingPlan& plan,
                                              const DerivativeEngine& e) {
    ScalarField g;
    g.value = [v = f.v.value](const SphericalPoint& p) { return v(p) / p.r; };
    if (f.v.has_partials())
        g.partial = [v = f.v](const SphericalPoint& p, Var var) {
            const double dv = v.partial(p, var);
            if (var == Var::r) return dv / p.r - v.value(p) / (p.r * p.r);
            return dv / p.r;
        };
    const QuatField F = as_quat_field(f);
    ResidualStats st;
    for (const SphericalPoint& p : sample_points(plan, f.seed_poles))
        st.add(p, std::abs(scalar_laplacian(g, p, e)), F.value(p).norm());
    return make_report("harmonic_v_over_r", f.name, e, st,
                       check_tolerance("harmonic_v_over_r", e));
}

enum class TheoremRoute { dbar, direct, both };

/// D_l lap(f) = D_r lap(f) = 0, with lap(f) obtained both from the
/// first-derivative route and from the direct second-derivative Laplacian;
/// the outer operators are fd4 stencils at kOuterStep over either route.
inline ResidualReport check_theorem(const StructuredField& f, const SamplingPlan& plan,
                                    const DerivativeEngine& e,
                                    TheoremRoute route = TheoremRoute::both) {
    auto route_field = [&e](std::function<Quaternion(const SphericalPoint&)> eval) {
        QuatField G;
        G.value = std::move(eval);
        G.partial = [val = G.value, rich = e.richardson](const SphericalPoint& p, Var v,
                                                         const DerivativeEngine&) {
            return quat_fd_partial(val, p, v, kOuterStep, rich);
        };
        return G;
    };
    const QuatField lap_dbar =
        route_field([f, e](const SphericalPoint& p) { return laplacian_via_dbar(f, p, e); });
    const QuatField F = as_quat_field(f);
    const QuatField lap_direct =
        route_field([F, e](const SphericalPoint& p) { return laplacian(F, p, e); });

    std::string check_id = route == TheoremRoute::dbar     ? "theorem_dbar"
                           : route == TheoremRoute::direct ? "theorem_direct"
                                                           : "theorem";
    ResidualStats st;
    for (const SphericalPoint& p : sample_points(plan, f.seed_poles)) {
        double resid = 0.0;
        if (route != TheoremRoute::direct) {
            const LeftRight lr = fueter_left_right_spherical(lap_dbar, p, e);
            resid = std::max(lr.left.norm(), lr.right.norm());
        }
        if (route != TheoremRoute::dbar) {
            const LeftRight lr = fueter_left_right_spherical(lap_direct, p, e);
            resid = std::max({resid, lr.left.norm(), lr.right.norm()});
        }
        st.add(p, resid, lap_dbar.value(p).norm());
    }
    std::string note;
    if (!f.satisfies_condition && route != TheoremRoute::direct)
        note = "first-derivative Laplacian route is not meaningful: "
               "field violates the condition hypothesis";
    const double tol = check_tolerance(check_id, e);
    return make_report(std::move(check_id), f.name, e, st, tol, std::move(note));
}

/// The five closed-form identities of the inverse frame.
inline ResidualReport check_frame_identities(const SamplingPlan& plan) {
    ResidualStats st;
    for (const SphericalPoint& p : sample_points(plan)) {
        const Frame fr = frame_at(p.alpha, p.beta);
        const FrameDerivs fd = frame_derivs_at(p.alpha, p.beta);
        const double sb = std::sin(p.beta), cb = std::cos(p.beta);
        const Quaternion q38 = fr.inv_iota_alpha * fd.d_inv_alpha_dalpha +
                               fr.inv_iota_beta * fd.d_inv_alpha_dbeta +
                               fr.iota * fr.inv_iota_alpha;
        const Quaternion q39 =
            fr.inv_iota_beta * fd.d_inv_beta_dbeta + fr.iota * fr.inv_iota_beta;
        const Quaternion q40 = fr.inv_iota_beta * fr.inv_iota_beta + Quaternion{1.0};
        const Quaternion q41 =
            fr.inv_iota_alpha * fr.inv_iota_alpha + Quaternion{1.0 / (sb * sb)};
        const Quaternion q42 = fr.inv_iota_alpha * fd.d_inv_beta_dalpha + Quaternion{cb / sb};
        const double resid = std::max(
            {q38.norm(), q39.norm(), q40.norm(), q41.norm(), q42.norm()});
        st.add(p, resid, 0.0);
    }
    return make_report("frame_identities", "builtin:frame", "closed-form", 0.0, st,
                       check_tolerance("frame_identities", DerivativeEngine{}));
}

namespace detail {

inline double second_angular_residual(const ScalarField& v, const SphericalPoint& p,
                                      const DerivativeEngine& e) {
    const Frame fr = frame_at(p.alpha, p.beta);
    const double sb = std::sin(p.beta), cb = std::cos(p.beta);
    const double vb = first_partial(v, p, Var::beta, e);
    const double vaa = second_partial(v, p, Var::alpha, Var::alpha, e);
    const double vbb = second_partial(v, p, Var::beta, Var::beta, e);
    const Quaternion rhs = -1.0 * (fr.iota * angular_derivative_scalar(v, p, e)) -
                           Quaternion{vaa / (sb * sb) + vbb + cb / sb * vb};
    return (angular_second(v, p, e) - rhs).norm();
}

} // namespace detail

/// ang_l(ang_l v) = -iota ang_l v - v_aa/sin^2 b - v_bb - cot(b) v_b,
/// valid for every C^2 scalar v.
inline ResidualReport check_second_angular(const ScalarField& v, const SamplingPlan& plan,
                                           const DerivativeEngine& e, std::string label) {
    ResidualStats st;
    for (const SphericalPoint& p : sample_points(plan))
        st.add(p, detail::second_angular_residual(v, p, e), std::abs(v.value(p)));
    return make_report("second_angular", std::move(label), e, st,
                       check_tolerance("second_angular", e));
}

inline ResidualReport check_second_angular(const std::vector<ScalarField>& fields,
                                           const SamplingPlan& plan, const DerivativeEngine& e,
                                           std::string label) {
    ResidualStats st;
    const auto pts = sample_points(plan);
    for (const ScalarField& v : fields)
        for (const SphericalPoint& p : pts)
            st.add(p, detail::second_angular_residual(v, p, e), std::abs(v.value(p)));
    return make_report("second_angular", std::move(label), e, st,
                       check_tolerance("second_angular", e));
}

namespace detail {

inline ResidualReport check_angular_laplace_core(const ScalarField& v,
                                                 const std::vector<Complex>& poles,
                                                 std::string label,
                                                 std::function<double(const SphericalPoint&)> mag,
                                                 const SamplingPlan& plan,
                                                 const DerivativeEngine& e) {
    ResidualStats st;
    for (const SphericalPoint& p : sample_points(plan, poles)) {
        const double sb = std::sin(p.beta), cb = std::cos(p.beta);
        const double vaa = second_partial(v, p, Var::alpha, Var::alpha, e);
        const double vbb = second_partial(v, p, Var::beta, Var::beta, e);
        const double vb = first_partial(v, p, Var::beta, e);
        st.add(p, std::abs(vaa / (sb * sb) + vbb + cb / sb * vb), mag(p));
    }
    return make_report("angular_laplace", std::move(label), e, st,
                       check_tolerance("angular_laplace", e));
}

} // namespace detail

/// v_aa/sin^2 b + v_bb = -cot(b) v_b; a consequence of the angular CR
/// system, so it holds for v of condition fields and fails for generic v.
inline ResidualReport check_angular_laplace(const StructuredField& f, const SamplingPlan& plan,
                                            const DerivativeEngine& e) {
    const QuatField F = as_quat_field(f);
    return detail::check_angular_laplace_core(
        f.v, f.seed_poles, f.name,
        [F](const SphericalPoint& p) { return F.value(p).norm(); }, plan, e);
}

inline ResidualReport check_angular_laplace(const ScalarField& v, std::string label,
                                            const SamplingPlan& plan, const DerivativeEngine& e) {
    return detail::check_angular_laplace_core(
        v, {}, std::move(label), [v](const SphericalPoint& p) { return std::abs(v.value(p)); },
        plan, e);
}

namespace detail {

inline double iota_product_residual(const QuatField& F, const QuatField& iF,
                                    const SphericalPoint& p, const DerivativeEngine& e) {
    const Frame fr = frame_at(p.alpha, p.beta);
    const Quaternion lhs = angular_derivative(iF, p, e);
    const Quaternion rhs = 2.0 * F.value(p) - fr.iota * angular_derivative(F, p, e);
    return (lhs - rhs).norm();
}

} // namespace detail

/// ang_l(iota f) = 2f - iota ang_l f for arbitrary quaternion fields.
inline ResidualReport check_angular_iota_product(const QuatField& F, const SamplingPlan& plan,
                                                 const DerivativeEngine& e, std::string label) {
    const QuatField iF = left_iota_product(F);
    ResidualStats st;
    for (const SphericalPoint& p : sample_points(plan))
        st.add(p, detail::iota_product_residual(F, iF, p, e), F.value(p).norm());
    return make_report("angular_iota_product", std::move(label), e, st,
                       check_tolerance("angular_iota_product", e));
}

inline ResidualReport check_angular_iota_product(const std::vector<QuatField>& fields,
                                                 const SamplingPlan& plan,
                                                 const DerivativeEngine& e, std::string label) {
    ResidualStats st;
    const auto pts = sample_points(plan);
    for (const QuatField& F : fields) {
        const QuatField iF = left_iota_product(F);
        for (const SphericalPoint& p : pts)
            st.add(p, detail::iota_product_residual(F, iF, p, e), F.value(p).norm());
    }
    return make_report("angular_iota_product", std::move(label), e, st,
                       check_tolerance("angular_iota_product", e));
}

namespace detail {

inline void accumulate_scalar_commutation(const ScalarField& g, ResidualStats& st,
                                          const std::vector<SphericalPoint>& pts,
                                          const DerivativeEngine& e) {
    const QuatField G = as_quat_field(g);
    auto derived = [&e](std::function<Quaternion(const SphericalPoint&)> eval) {
        QuatField D;
        D.value = std::move(eval);
        D.partial = [val = D.value, rich = e.richardson](const SphericalPoint& p, Var v,
                                                         const DerivativeEngine&) {
            return quat_fd_partial(val, p, v, kOuterStep, rich);
        };
        return D;
    };
    const QuatField Dg =
        derived([G, e](const SphericalPoint& p) { return fueter_left(G, p, e); });
    const QuatField Dbarg =
        derived([G, e](const SphericalPoint& p) { return fueter_conj_left(G, p, e); });
    for (const SphericalPoint& p : pts) {
        const double r45 = (fueter_left(G, p, e) - fueter_right(G, p, e)).norm();
        const Quaternion d_dbar = fueter_left_spherical(Dbarg, p, e);
        const Quaternion dbar_d = fueter_conj_left_spherical(Dg, p, e);
        const double r_comm = (d_dbar - dbar_d).norm();
        const double r_lap = (d_dbar - Quaternion{scalar_laplacian(g, p, e)}).norm();
        st.add(p, std::max({r45, r_comm, r_lap}), std::abs(g.value(p)));
    }
}

} // namespace detail

/// D_l g = D_r g for scalar g, the operators commute, and both orderings of
/// D_l, conj(D_l) reproduce the Laplacian.
inline ResidualReport check_scalar_commutation(const ScalarField& g, const SamplingPlan& plan,
                                               const DerivativeEngine& e, std::string label) {
    ResidualStats st;
    detail::accumulate_scalar_commutation(g, st, sample_points(plan), e);
    return make_report("scalar_commutation", std::move(label), e, st,
                       check_tolerance("scalar_commutation", e));
}

inline ResidualReport check_scalar_commutation(const std::vector<ScalarField>& fixtures,
                                               const SamplingPlan& plan,
                                               const DerivativeEngine& e, std::string label) {
    ResidualStats st;
    const auto pts = sample_points(plan);
    for (const ScalarField& g : fixtures) detail::accumulate_scalar_commutation(g, st, pts, e);
    return make_report("scalar_commutation", std::move(label), e, st,
                       check_tolerance("scalar_commutation", e));
}

/// Chain consequence on a condition field: conj(D_l) D_l (-2v/r) = 0.
inline ResidualReport check_field_chain(const StructuredField& f, const SamplingPlan& plan,
                                        const DerivativeEngine& e) {
    ScalarField g;
    g.value = [v = f.v.value](const SphericalPoint& p) { return -2.0 * v(p) / p.r; };
    if (f.v.has_partials())
        g.partial = [v = f.v](const SphericalPoint& p, Var var) {
            const double dv = v.partial(p, var);
            if (var == Var::r) return -2.0 * dv / p.r + 2.0 * v.value(p) / (p.r * p.r);
            return -2.0 * dv / p.r;
        };
    const QuatField G = as_quat_field(g);
    QuatField Dg;
    Dg.value = [G, e](const SphericalPoint& p) { return fueter_left(G, p, e); };
    Dg.partial = [val = Dg.value, rich = e.richardson](const SphericalPoint& p, Var v,
                                                       const DerivativeEngine&) {
        return quat_fd_partial(val, p, v, kOuterStep, rich);
    };
    const QuatField F = as_quat_field(f);
    ResidualStats st;
    for (const SphericalPoint& p : sample_points(plan, f.seed_poles))
        st.add(p, fueter_conj_left_spherical(Dg, p, e).norm(), F.value(p).norm());
    return make_report("commutation", f.name, e, st, check_tolerance("commutation", e));
}

/// Regularity criterion for axial fields: (d/dt + iota d/dr) f = 2v/r.
inline ResidualReport check_axial_regularity(const StructuredField& f, const SamplingPlan& plan,
                                             const DerivativeEngine& e) {
    const QuatField F = as_quat_field(f);
    ResidualStats st;
    for (const SphericalPoint& p : sample_points(plan, f.seed_poles)) {
        const Quaternion res = F.partial(p, Var::t, e) +
                               iota_at(p.alpha, p.beta) * F.partial(p, Var::r, e) -
                               Quaternion{2.0 * f.v.value(p) / p.r};
        st.add(p, res.norm(), F.value(p).norm());
    }
    return make_report("axial_regularity", f.name, e, st,
                       check_tolerance("axial_regularity", e));
}

/// (d/dt + iota d/dr) applied to ang_l v vanishes on condition fields.
inline ResidualReport check_angular_tr_closure(const StructuredField& f, const SamplingPlan& plan,
                                               const DerivativeEngine& e) {
    auto G = [&f, &e](const SphericalPoint& p) { return angular_derivative_scalar(f.v, p, e); };
    const QuatField F = as_quat_field(f);
    ResidualStats st;
    for (const SphericalPoint& p : sample_points(plan, f.seed_poles)) {
        const Quaternion Gt = fd_derivative(
            [&](double dx) { return G(shifted(p, Var::t, dx)); }, kInnerStep, 2, e.richardson);
        const Quaternion Gr = fd_derivative(
            [&](double dx) { return G(shifted(p, Var::r, dx)); }, kInnerStep, 2, e.richardson);
        const Quaternion res = Gt + iota_at(p.alpha, p.beta) * Gr;
        st.add(p, res.norm(), F.value(p).norm());
    }
    return make_report("angular_tr_closure", f.name, e, st,
                       check_tolerance("angular_tr_closure", e));
}

/// Cartesian and spherical forms of D_l agree on any smooth field.
inline ResidualReport check_dl_consistency(const StructuredField& f, const SamplingPlan& plan,
                                           const DerivativeEngine& e) {
    const QuatField F = as_quat_field(f);
    ResidualStats st;
    for (const SphericalPoint& p : sample_points(plan, f.seed_poles)) {
        const double resid = (fueter_left(F, p, e) - fueter_left_spherical(F, p, e)).norm();
        st.add(p, resid, F.value(p).norm());
    }
    return make_report("dl_consistency", f.name, e, st, check_tolerance("dl_consistency", e));
}

// ---------------------------------------------------------------------------
// Convergence-order estimation

struct ConvergenceLevel {
    double h;
    double rel_max;
};

struct ConvergenceResult {
    std::vector<ConvergenceLevel> levels;
    double order = 0.0;
    bool floor_reached = false;
};

inline constexpr double kConvergenceFloor = 1e-12;

/// Least-squares slope of log(rel_max) vs log(h) over h0, h0/2, ...
/// Levels with non-finite or zero residual are excluded from the fit; if the
/// residuals sit at the analytic floor the result says so instead of an order.
template <class RunAtH>
ConvergenceResult estimate_convergence_order(RunAtH&& run_at_h, double h0, int levels) {
    if (levels < 3) throw config_error("converge: levels must be >= 3");
    if (!(h0 > 0.0)) throw config_error("converge: h0 must be > 0");
    ConvergenceResult res;
    double h = h0;
    for (int i = 0; i < levels; ++i, h *= 0.5)
        res.levels.push_back({h, run_at_h(h)});

    double max_resid = 0.0;
    std::vector<std::pair<double, double>> fit; // (log h, log resid)
    for (const ConvergenceLevel& lv : res.levels) {
        if (!std::isfinite(lv.rel_max) || lv.rel_max <= 0.0) continue;
        max_resid = std::max(max_resid, lv.rel_max);
        fit.emplace_back(std::log(lv.h), std::log(lv.rel_max));
    }
    if (fit.size() < 2 || max_resid < kConvergenceFloor) {
        res.floor_reached = true;
        return res;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [lx, ly] : fit) {
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double m = static_cast<double>(fit.size());
    res.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return res;
}

// ---------------------------------------------------------------------------
// Built-in fixtures for the unconditional identity checks

inline std::vector<ScalarField> random_trig_scalars(int count, std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    std::vector<ScalarField> out;
    for (int i = 0; i < count; ++i) {
        std::vector<TrigTerm> terms;
        for (int k = 0; k < 4; ++k) {
            TrigTerm tt;
            tt.amp = 2.0 * uniform01(rng) - 1.0;
            tt.m = static_cast<int>(uniform01(rng) * 3.0);
            tt.phase_a = two_pi * uniform01(rng);
            tt.n = static_cast<int>(uniform01(rng) * 3.0);
            tt.phase_b = two_pi * uniform01(rng);
            terms.push_back(tt);
        }
        out.push_back(make_trig_field(std::move(terms)));
    }
    return out;
}

inline std::vector<QuatField> random_trig_quat_fields(int count, std::uint64_t rng_seed) {
    std::vector<ScalarField> comp = random_trig_scalars(4 * count, rng_seed);
    std::vector<QuatField> out;
    for (int i = 0; i < count; ++i)
        out.push_back(quat_field_from_components(comp[4 * i], comp[4 * i + 1], comp[4 * i + 2],
                                                 comp[4 * i + 3]));
    return out;
}

inline std::vector<std::pair<std::string, ScalarField>> commutation_scalar_fixtures() {
    return {{"builtin:xy", sf_product(sf_coord_x(), sf_coord_y())},
            {"builtin:tx+y^2", sf_sum(sf_product(sf_coord_t(), sf_coord_x()),
                                      sf_product(sf_coord_y(), sf_coord_y()))},
            {"builtin:t^2-x^2", sf_sum(sf_product(sf_coord_t(), sf_coord_t()),
                                       sf_scale(sf_product(sf_coord_x(), sf_coord_x()), -1.0))}};
}

inline std::vector<AngularPair> mercator_fixture_pairs() {
    return {mercator_pair(exp_iw_seed(), "mercator:exp"),
            mercator_pair(const_seed(Complex(0.7, -0.3)), "mercator:const"),
            mercator_pair(identity_seed(), "mercator:w")};
}

inline std::vector<StructuredField> regular_fixture_fields() {
    return {fueter_laplacian_field(power_seed(3)), fueter_laplacian_field(exp_seed()),
            fueter_laplacian_field(reciprocal_seed())};
}

} // namespace fueter
