#include "msf/quadrature.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <vector>

namespace msf {

namespace {

constexpr double kPi2 = 1.5707963267948966;  // pi/2
constexpr int kHardLevelCap = 12;

// u-range: past ~6.1 the unit abscissae underflow their endpoint distance,
// past ~6.7 the half-line abscissae leave double range.
constexpr double kUnitUMax = 6.1;
constexpr double kHalfUMax = 6.7;

struct UnitNode {
    double t;    // abscissa in (0, 1); may round to 1.0, use omt there
    double omt;  // 1 - t on the stable branch, always > 0
    double w;    // weight without the level step factor h
};

struct HalfNode {
    double t;
    double w;
};

UnitNode make_unit_node(double u) {
    double v = kPi2 * std::sinh(u);
    double x = 1.0 / (1.0 + std::exp(-2.0 * v));
    double omx = 1.0 / (1.0 + std::exp(2.0 * v));
    double w = kPi2 * std::cosh(u) * 2.0 * x * omx;
    return {x, omx, w};
}

HalfNode make_half_node(double u) {
    double t = std::exp(kPi2 * std::sinh(u));
    double w = t * kPi2 * std::cosh(u);
    return {t, w};
}

double node_abscissa(const UnitNode& n) { return n.t; }
double node_abscissa(const HalfNode& n) { return n.t; }

// Level k holds u = j * 2^-k: level 0 the integer grid, level k > 0 the odd
// multiples of its step, ordered by |u| so in-level tail truncation works.
std::vector<std::vector<UnitNode>> g_unit_levels;
std::vector<std::vector<HalfNode>> g_half_levels;
std::once_flag g_tables_once;

void build_tables() {
    for (int k = 0; k <= kHardLevelCap; ++k) {
        std::vector<UnitNode> un;
        std::vector<HalfNode> hn;
        double h = std::ldexp(1.0, -k);
        double start = (k == 0) ? 0.0 : h;
        double step = (k == 0) ? 1.0 : 2.0 * h;
        for (double u = start; u <= kHalfUMax; u += step) {
            if (u <= kUnitUMax) {
                un.push_back(make_unit_node(u));
                if (u > 0.0) un.push_back(make_unit_node(-u));
            }
            hn.push_back(make_half_node(u));
            if (u > 0.0) hn.push_back(make_half_node(-u));
        }
        g_unit_levels.push_back(std::move(un));
        g_half_levels.push_back(std::move(hn));
    }
}

struct LevelSum {
    double value = 0.0;
    double err = 0.0;
    bool bad = false;
    double bad_at = 0.0;
};

// scale_hint: magnitude of the running integral, used to truncate the
// doubly-exponentially dead tail of a level sweep. Zero disables truncation.
template <typename Node, typename EvalFn>
LevelSum sum_level(const std::vector<Node>& nodes, const EvalFn& eval,
                   double scale_hint, std::int64_t& evals) {
    LevelSum out;
    int tiny_run = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        PointValue pv = eval(n);
        ++evals;
        double contrib = n.w * pv.value;
        if (std::isnan(contrib) || std::isinf(contrib)) {
            out.bad = true;
            out.bad_at = node_abscissa(n);
            return out;
        }
        out.value += contrib;
        out.err += n.w * std::fabs(pv.err);
        if (scale_hint > 0.0 && i > nodes.size() / 4) {
            double floor = 1e-18 * scale_hint;
            if (std::fabs(contrib) + n.w * std::fabs(pv.err) < floor) {
                if (++tiny_run >= 6) break;
            } else {
                tiny_run = 0;
            }
        }
    }
    return out;
}

template <typename Node, typename EvalFn>
QuadratureResult run_levels(const std::vector<std::vector<Node>>& tables,
                            const EvalFn& eval, const QuadratureConfig& cfg) {
    QuadratureResult res;
    double total = 0.0;
    double toterr = 0.0;
    double prev = 0.0;
    for (int k = 0; k <= cfg.max_level; ++k) {
        double hint = (k == 0) ? 0.0 : std::fabs(total);
        LevelSum ls = sum_level(tables[k], eval, hint, res.nodes_evaluated);
        if (ls.bad) {
            res.converged = false;
            std::ostringstream os;
            os << "integrand returned a non-finite value near t = " << ls.bad_at;
            res.note = os.str();
            return res;
        }
        double h = std::ldexp(1.0, -k);
        if (k == 0) {
            total = ls.value;
            toterr = ls.err;
        } else {
            total = 0.5 * total + h * ls.value;
            toterr = 0.5 * toterr + h * ls.err;
        }
        if (k >= 2) {
            double delta = std::fabs(total - prev);
            double scale = std::max(std::fabs(total), 1e-300);
            double tol = std::max(cfg.abs_tol, cfg.rel_tol * scale);
            if (delta <= tol || delta <= 4e-16 * scale) {
                res.value = total;
                res.abs_error_estimate = delta + toterr + 1e-16 * scale;
                res.converged = true;
                return res;
            }
        }
        prev = total;
    }
    res.value = total;
    res.abs_error_estimate = std::fabs(total - prev) + toterr;
    res.converged = false;
    res.note = "level cap reached without convergence";
    return res;
}

} // namespace

void QuadratureConfig::validate() const {
    if (max_level < 3) throw domain_error("QuadratureConfig: max_level >= 3 required");
    if (max_level > kHardLevelCap) throw domain_error("QuadratureConfig: max_level too large");
    if (!(rel_tol >= 1e-13)) throw domain_error("QuadratureConfig: rel_tol >= 1e-13 required");
    if (!(abs_tol >= 0.0)) throw domain_error("QuadratureConfig: abs_tol must be >= 0");
}

QuadratureResult integrate_unit(const UnitIntegrand& f, QuadratureConfig cfg) {
    cfg.validate();
    std::call_once(g_tables_once, build_tables);
    return run_levels(g_unit_levels,
                      [&](const UnitNode& n) { return f(n.t, n.omt); }, cfg);
}

QuadratureResult integrate_half_line(const HalfLineIntegrand& f, QuadratureConfig cfg) {
    cfg.validate();
    std::call_once(g_tables_once, build_tables);

    // Tail probe: along the coarse grid the outer contributions must stop
    // growing; two consecutive increases past u = 3 flag divergence.
    {
        double prev1 = -1.0, prev2 = -1.0;
        for (double u = 3.0; u <= kHalfUMax; u += 1.0) {
            HalfNode n = make_half_node(u);
            PointValue pv = f(n.t);
            double c = std::fabs(n.w * pv.value);
            if (std::isnan(c)) break;  // the level runner reports this
            if (prev2 >= 0.0 && prev1 > prev2 && c > prev1 && c > cfg.abs_tol) {
                QuadratureResult res;
                res.converged = false;
                res.note = "tail divergence detected on (0, inf)";
                return res;
            }
            prev2 = prev1;
            prev1 = c;
        }
    }

    return run_levels(g_half_levels,
                      [&](const HalfNode& n) { return f(n.t); }, cfg);
}

QuadratureResult integrate_2d(const PlaneIntegrand& f, QuadratureConfig cfg) {
    cfg.validate();
    QuadratureConfig inner = cfg;
    inner.rel_tol = std::max(cfg.rel_tol * 0.25, 1e-13);
    inner.scheme = QuadratureScheme::half_line;

    std::int64_t inner_nodes = 0;
    bool inner_failed = false;
    std::string inner_note;

    UnitIntegrand outer = [&](double s, double /*oms*/) -> PointValue {
        double theta = s * kPi2;
        QuadratureResult ri = integrate_half_line(
            [&](double r) { return f(theta, r); }, inner);
        inner_nodes += ri.nodes_evaluated;
        if (!ri.converged) {
            inner_failed = true;
            inner_note = ri.note;
            return {std::numeric_limits<double>::quiet_NaN(), 0.0};
        }
        return {kPi2 * ri.value, kPi2 * ri.abs_error_estimate};
    };

    QuadratureConfig ocfg = cfg;
    ocfg.scheme = QuadratureScheme::unit_interval;
    QuadratureResult res = integrate_unit(outer, ocfg);
    res.nodes_evaluated += inner_nodes;
    if (inner_failed && !res.converged) {
        res.note = "inner integral failed: " + inner_note;
    }
    return res;
}

QuadratureResult integrate_unit(const std::function<double(double)>& f, QuadratureConfig cfg) {
    return integrate_unit(
        [&](double t, double) -> PointValue { return {f(t), 0.0}; }, cfg);
}

QuadratureResult integrate_half_line(const std::function<double(double)>& f, QuadratureConfig cfg) {
    return integrate_half_line([&](double t) -> PointValue { return {f(t), 0.0}; }, cfg);
}

} // namespace msf
