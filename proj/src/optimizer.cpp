#include "photonq/optimizer.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace photonq {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double l2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

using Matrix = std::vector<std::vector<double>>;

Matrix identity(std::size_t n) {
    Matrix m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

std::vector<double> matvec(const Matrix& m, const std::vector<double>& v) {
    std::vector<double> r(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    return r;
}

// H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
void bfgs_update(Matrix& h, const std::vector<double>& s, const std::vector<double>& y,
                 double rho) {
    std::size_t n = s.size();
    std::vector<double> hy = matvec(h, y);
    double yhy = dot(y, hy);
    Matrix next = h;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            next[i][j] = h[i][j] - rho * (s[i] * hy[j] + hy[i] * s[j]) +
                         rho * (rho * yhy + 1.0) * s[i] * s[j];
    h = std::move(next);
}

} // namespace

OptResult optimize(const Objective& objective, const std::vector<double>& init,
                   const OptConfig& config) {
    std::size_t n = objective.parameters.size();
    if (init.size() != n) throw ConfigError("initial point has the wrong length");
    if (config.max_iters < 0) throw ConfigError("max_iters must be nonnegative");

    OptResult result;
    auto warn = [&](const std::string& msg) {
        if (result.warnings.size() < 20)
            result.warnings.push_back(msg);
        else if (result.warnings.size() == 20)
            result.warnings.push_back("further warnings suppressed");
    };
    std::vector<double> x = init;
    ParamMap pm = objective.to_params(x);
    EvalResult ev = evaluate(objective, pm);
    if (ev.degenerate) warn("degenerate denominator at the initial point; value set to 0");
    std::vector<double> g = gradient(objective, pm);
    double f = ev.value;

    auto record = [&](int iter) {
        result.trace.records.push_back({iter, x, f, l2(g), ev.denominator});
        if (result.trace.records.size() == 1 || f > result.best_value) {
            result.best_value = f;
            result.best_params = x;
        }
    };
    record(0);

    Matrix h = identity(n);
    const double c1 = 1e-4;
    for (int iter = 1; iter <= config.max_iters; ++iter) {
        if (l2(g) < config.gtol) {
            result.converged = true;
            break;
        }
        // Minimize F = -f; gF = -g.
        std::vector<double> gf(n);
        for (std::size_t i = 0; i < n; ++i) gf[i] = -g[i];
        std::vector<double> p;
        if (config.method == OptMethod::BFGS) {
            p = matvec(h, gf);
            for (double& v : p) v = -v;
            if (dot(gf, p) >= 0) {  // not a descent direction: reset curvature
                h = identity(n);
                p = g;
            }
        } else {
            p = g;  // steepest ascent
        }

        double fv = -f;  // current F
        double slope = dot(gf, p);
        double alpha = 1.0;
        std::vector<double> xn(n);
        EvalResult evn;
        bool accepted = false;
        while (alpha >= 1e-12) {
            for (std::size_t i = 0; i < n; ++i) xn[i] = x[i] + alpha * p[i];
            evn = evaluate(objective, objective.to_params(xn));
            if (evn.degenerate)
                warn("degenerate denominator during line search at iteration " +
                     std::to_string(iter) + "; value treated as 0");
            double fn = -evn.value;
            // NaN-rejecting Armijo test.
            if (fn <= fv + c1 * alpha * slope) {
                accepted = true;
                break;
            }
            alpha /= 2;
        }
        if (!accepted) break;  // line search exhausted

        ParamMap pmn = objective.to_params(xn);
        std::vector<double> gn = gradient(objective, pmn);
        if (config.method == OptMethod::BFGS) {
            std::vector<double> s(n), y(n);
            for (std::size_t i = 0; i < n; ++i) {
                s[i] = xn[i] - x[i];
                y[i] = -gn[i] - gf[i];  // gF_new - gF_old
            }
            double sy = dot(s, y);
            if (sy > 1e-12) bfgs_update(h, s, y, 1.0 / sy);
        }
        x = std::move(xn);
        f = evn.value;
        ev = evn;
        g = std::move(gn);
        record(iter);
    }
    if (!result.trace.records.empty() && l2(g) < config.gtol) result.converged = true;
    return result;
}

std::vector<double> default_init_sampler(const Objective& objective, int start_index,
                                         std::uint64_t seed) {
    std::mt19937_64 gen(seed + 0x9E3779B97F4A7C15ULL * std::uint64_t(start_index + 1));
    std::vector<double> x(objective.parameters.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double u = double(gen() >> 11) * 0x1.0p-53 * 0.2;
        x[i] = (i % 2 == 0) ? u : -u;
    }
    return x;
}

MultistartResult multistart(const Objective& objective, int n_starts, const InitSampler& sampler,
                            const OptConfig& config) {
    if (n_starts < 1) throw ConfigError("multistart needs at least one start");
    MultistartResult out;
    for (int k = 0; k < n_starts; ++k) {
        OptResult r = optimize(objective, sampler(k, config.seed), config);
        if (out.best_start < 0 || r.best_value > out.best.best_value) {
            out.best = r;
            out.best_start = k;
        }
        out.runs.push_back(std::move(r));
    }
    return out;
}

static std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trace_csv(const Objective& objective, const OptTrace& trace) {
    std::ostringstream out;
    out << "iteration,value,grad_norm,denominator";
    for (const auto& name : objective.parameters) out << ',' << name;
    out << '\n';
    for (const auto& rec : trace.records) {
        out << rec.iteration << ',' << fmt_num(rec.value) << ',' << fmt_num(rec.grad_norm) << ','
            << fmt_num(rec.denominator);
        for (double v : rec.params) out << ',' << fmt_num(v);
        out << '\n';
    }
    return out.str();
}

} // namespace photonq
