#include "rforge/space.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "rforge/linsolve.hpp"
#include "rforge/series.hpp"

namespace rforge {

namespace {

BiPoly det_bipoly(const std::vector<std::vector<BiPoly>>& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    int arity = m[0][0].arity();
    BiPoly acc(arity);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<BiPoly>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<BiPoly> row;
            for (std::size_t cc = 0; cc < n; ++cc)
                if (cc != c) row.push_back(m[r][cc]);
            minor.push_back(std::move(row));
        }
        BiPoly term = m[0][c] * det_bipoly(minor);
        if (c % 2) term = -term;
        acc += term;
    }
    return acc;
}

std::vector<GaussianRational> random_point(std::mt19937& rng, int k,
                                           const std::vector<int>& zero_vars) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    std::vector<GaussianRational> p(k);
    for (int i = 0; i < k; ++i) {
        if (std::find(zero_vars.begin(), zero_vars.end(), i + 1) != zero_vars.end()) continue;
        int n = num(rng);
        if (n == 0) n = 5;
        p[i] = GaussianRational(rat(n, den(rng)));
    }
    return p;
}

// Every monomial of p divisible by some t_i with i in S  <=>  p in <t_i : i in S>.
bool in_plane_ideal(const BiPoly& p, const std::vector<int>& S) {
    for (const auto& [k, c] : p.terms()) {
        bool hit = false;
        for (int v : S)
            if (k.holo[v - 1] > 0) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

}  // namespace

BiPoly NormalizationChart::pullback(const BiPoly& ambient_poly) const {
    return ambient_poly.substitute(components);
}

Form NormalizationChart::pullback_dz(int ambient_index, bool anti) const {
    if (ambient_index < 1 || ambient_index > ambient_dim())
        throw argument_error("ambient index out of range");
    const BiPoly& pi = components[ambient_index - 1];
    Form out(arity);
    for (int j = 1; j <= arity; ++j) {
        BiPoly d = pi.wirtinger_derive(j, false);
        if (d.is_zero()) continue;
        if (anti) d = d.conj();
        out += Form::differential(arity, j, anti) * d;
    }
    return out;
}

std::vector<BiPoly> NormalizationChart::critical_minors() const {
    int n = ambient_dim(), k = arity;
    if (n < k) throw argument_error("chart maps into lower-dimensional ambient space");
    std::vector<std::vector<BiPoly>> jac(n, std::vector<BiPoly>(k, BiPoly(k)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) jac[i][j] = components[i].wirtinger_derive(j + 1, false);

    std::vector<BiPoly> minors;
    std::vector<int> rows(k);
    std::function<void(int, int)> choose = [&](int start, int depth) {
        if (depth == k) {
            std::vector<std::vector<BiPoly>> sub(k, std::vector<BiPoly>(k, BiPoly(k)));
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) sub[r][c] = jac[rows[r]][c];
            BiPoly d = det_bipoly(sub);
            if (!d.is_zero()) minors.push_back(d);
            return;
        }
        for (int r = start; r < n; ++r) {
            rows[depth] = r;
            choose(r + 1, depth + 1);
        }
    };
    choose(0, 0);
    return minors;
}

SpacePresentation::SpacePresentation(int n, std::vector<NormalizationChart> cs)
    : ambient_dim(n), charts(std::move(cs)) {
    if (charts.empty()) throw argument_error("space presentation needs at least one chart");
    for (const auto& ch : charts) {
        if ((int)ch.components.size() != n)
            throw argument_error("chart component count differs from ambient dimension");
        bool all_const = true;
        for (const auto& c : ch.components) {
            if (!c.is_holomorphic()) throw argument_error("chart components must be holomorphic");
            if (!c.is_constant()) all_const = false;
        }
        if (all_const) throw argument_error("chart components are all constant");
    }
}

int SpacePresentation::dimension() const {
    int d = 0;
    for (const auto& ch : charts) d = std::max(d, ch.arity);
    return d;
}

ChartFn ChartFn::normalized() const {
    if (den.is_zero()) throw argument_error("zero denominator in chart function");
    if (den.is_constant()) {
        Scalar c = den.constant_term();
        BiPoly n = num;
        n *= Scalar(GaussianRational(1) / c.coef, -c.tau_power);
        return {n, BiPoly::constant(num.arity(), Scalar(1))};
    }
    return *this;
}

WeakFunction make_weak_function(const SpacePresentation& space, std::vector<ChartFn> pullbacks,
                                std::optional<BiPoly> witness, std::string name) {
    if (pullbacks.size() != space.charts.size())
        throw argument_error("one pullback per chart required");
    WeakFunction w;
    w.space = &space;
    for (auto& p : pullbacks) w.pullbacks.push_back(p.normalized());
    w.ambient_witness = witness;
    w.name = std::move(name);
    if (witness) {
        for (std::size_t c = 0; c < space.charts.size(); ++c) {
            BiPoly lhs = space.charts[c].pullback(*witness) * w.pullbacks[c].den;
            if (lhs != w.pullbacks[c].num)
                throw argument_error("ambient witness disagrees with chart pullback on chart " +
                                     std::to_string(c));
        }
    }
    return w;
}

int ChartVariety::codimension() const {
    if (dimension < 0) return -1;
    return basis.arity() - dimension;
}

Variety zero_set(const std::vector<WeakFunction>& tuple) {
    if (tuple.empty()) throw argument_error("empty function tuple");
    const SpacePresentation* space = tuple.front().space;
    for (const auto& f : tuple)
        if (f.space != space) throw argument_error("functions live on different spaces");

    Variety v;
    for (std::size_t c = 0; c < space->charts.size(); ++c) {
        int k = space->charts[c].arity;
        std::vector<BiPoly> gens;
        for (const auto& f : tuple) {
            const ChartFn& fn = f.on_chart((int)c);
            if (!fn.is_polynomial())
                throw argument_error("zero_set needs polynomial pullbacks per chart");
            if (!fn.num.is_zero()) gens.push_back(fn.num);
        }
        ChartVariety cv;
        cv.chart = (int)c;
        cv.basis = buchberger(Ideal(k, gens));
        cv.dimension = cv.basis.dimension();
        // all-zero pullbacks: the whole chart is in the zero set
        if (gens.empty()) cv.dimension = k;
        v.charts.push_back(std::move(cv));
        v.dimension = std::max(v.dimension, v.charts.back().dimension);
    }
    return v;
}

std::string to_string(CIVerdict v) {
    switch (v) {
        case CIVerdict::complete_intersection: return "complete-intersection";
        case CIVerdict::not_complete_intersection: return "not-complete-intersection";
        case CIVerdict::empty_zero_set: return "empty-zero-set";
    }
    return "?";
}

CIVerdict complete_intersection_verdict(const std::vector<WeakFunction>& tuple) {
    Variety v = zero_set(tuple);
    if (v.empty()) return CIVerdict::empty_zero_set;
    int p = (int)tuple.size();
    for (const auto& cv : v.charts) {
        if (cv.dimension < 0) continue;  // empty on this chart
        if (cv.codimension() != p) return CIVerdict::not_complete_intersection;
    }
    return CIVerdict::complete_intersection;
}

StrongHolomorphyResult is_strongly_holomorphic(const WeakFunction& w, int degree_bound) {
    const SpacePresentation& space = *w.space;
    int n = space.ambient_dim;

    // Representability check: the pullback degrees must be expressible.
    for (std::size_t c = 0; c < space.charts.size(); ++c) {
        const ChartFn& fn = w.on_chart((int)c);
        if (!fn.is_polynomial())
            throw argument_error("strong-holomorphy test needs polynomial pullbacks");
        int maxd = 0;
        for (const auto& comp : space.charts[c].components)
            maxd = std::max(maxd, comp.total_degree());
        if (fn.num.total_degree() > degree_bound * maxd)
            throw argument_error("degree bound too small to express the pullback");
    }

    // Ambient monomials of degree <= bound.
    std::vector<Multidegree> ambient;
    Multidegree scratch(n, 0);
    std::function<void(int, int)> gen = [&](int pos, int left) {
        if (pos == n) {
            ambient.push_back(scratch);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            scratch[pos] = e;
            gen(pos + 1, left - e);
        }
        scratch[pos] = 0;
    };
    gen(0, degree_bound);

    // Rows: (chart, chart monomial) pairs.
    struct RowKey {
        int chart;
        MonoKey mono;
        bool operator<(const RowKey& o) const {
            if (chart != o.chart) return chart < o.chart;
            if (mono == o.mono) return false;
            return mono < o.mono;
        }
    };
    std::map<RowKey, int> rows;
    auto row_of = [&](int chart, const MonoKey& m) {
        auto it = rows.find({chart, m});
        if (it == rows.end()) it = rows.emplace(RowKey{chart, m}, (int)rows.size()).first;
        return it->second;
    };

    std::vector<std::vector<std::pair<int, GaussianRational>>> cols(ambient.size());
    for (std::size_t a = 0; a < ambient.size(); ++a) {
        BiPoly mono = BiPoly::monomial(n, ambient[a], Multidegree(n, 0), Scalar(1));
        for (std::size_t c = 0; c < space.charts.size(); ++c) {
            BiPoly pb = space.charts[c].pullback(mono);
            for (const auto& [k, v] : pb.terms())
                cols[a].emplace_back(row_of((int)c, k), v.coef);
        }
    }
    for (std::size_t c = 0; c < space.charts.size(); ++c)
        for (const auto& [k, v] : w.on_chart((int)c).num.terms()) row_of((int)c, k);

    LinearSystem sys((int)rows.size(), (int)ambient.size());
    for (std::size_t a = 0; a < ambient.size(); ++a)
        for (const auto& [r, v] : cols[a]) sys.at(r, (int)a) += v;
    for (std::size_t c = 0; c < space.charts.size(); ++c)
        for (const auto& [k, v] : w.on_chart((int)c).num.terms())
            sys.b[row_of((int)c, k)] = v.coef;

    auto sol = solve(std::move(sys));
    StrongHolomorphyResult res;
    res.bound = degree_bound;
    if (!sol) {
        res.status = StrongHolomorphyResult::Status::no_up_to_bound;
        return res;
    }
    BiPoly witness(n);
    for (std::size_t a = 0; a < ambient.size(); ++a)
        if (!(*sol)[a].is_zero())
            witness.add_term({ambient[a], Multidegree(n, 0)}, Scalar((*sol)[a]));
    res.status = StrongHolomorphyResult::Status::yes;
    res.witness = witness;
    return res;
}

bool ChartLocus::contains(const std::vector<GaussianRational>& point) const {
    if (kind == Kind::plane) {
        for (int v : zero_vars)
            if (!point[v - 1].is_zero()) return false;
        return true;
    }
    return equation.evaluate(point).is_zero();
}

std::string ChartLocus::str() const {
    std::ostringstream os;
    os << "chart " << chart << ": ";
    if (kind == Kind::plane) {
        os << "{";
        for (std::size_t i = 0; i < zero_vars.size(); ++i)
            os << (i ? ", " : "") << "t" << zero_vars[i] << "=0";
        os << "}";
    } else {
        os << "{" << equation.str() << " = 0}";
    }
    return os.str();
}

bool PoleSetResult::covers_point(int chart, const std::vector<GaussianRational>& point) const {
    for (const auto& c : components)
        if (c.chart == chart && c.contains(point)) return true;
    return false;
}

namespace {

/// Localized strong-holomorphy test: does some ambient polynomial of degree
/// <= bound reproduce the germ of w at chart point p, to series order bound?
bool locally_strongly_holomorphic(const NormalizationChart& chart, const ChartFn& w,
                                  const std::vector<GaussianRational>& p, int bound) {
    int k = chart.arity, n = chart.ambient_dim();
    int N = bound;  // series truncation order

    BiPoly num_p = w.num.shift(p);
    BiPoly den_p = w.den.shift(p);
    if (den_p.constant_term().is_zero())
        throw argument_error("localization point lies in the denominator locus");
    BiPoly target = truncate_total(num_p * series_inverse(den_p, N), N);

    // Shifted chart map components pi(t + p) - pi(p): germ coordinates at pi(p).
    std::vector<BiPoly> shifted;
    for (const auto& comp : chart.components) {
        BiPoly s = comp.shift(p);
        Scalar c0 = s.constant_term();
        s.add_term({s.zero_md(), s.zero_md()}, -c0);
        shifted.push_back(s);
    }

    std::vector<Multidegree> ambient;
    Multidegree scratch(n, 0);
    std::function<void(int, int)> gen = [&](int pos, int left) {
        if (pos == n) {
            ambient.push_back(scratch);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            scratch[pos] = e;
            gen(pos + 1, left - e);
        }
        scratch[pos] = 0;
    };
    gen(0, bound);

    std::map<MonoKey, int> rows;
    auto row_of = [&](const MonoKey& m) {
        auto it = rows.find(m);
        if (it == rows.end()) it = rows.emplace(m, (int)rows.size()).first;
        return it->second;
    };
    std::vector<std::vector<std::pair<int, GaussianRational>>> cols(ambient.size());
    for (std::size_t a = 0; a < ambient.size(); ++a) {
        BiPoly pb = BiPoly::constant(k, Scalar(1));
        for (int i = 0; i < n; ++i)
            for (int e = 0; e < ambient[a][i]; ++e) pb = truncate_total(pb * shifted[i], N);
        for (const auto& [key, v] : pb.terms()) cols[a].emplace_back(row_of(key), v.coef);
    }
    for (const auto& [key, v] : target.terms()) row_of(key);

    LinearSystem sys((int)rows.size(), (int)ambient.size());
    for (std::size_t a = 0; a < ambient.size(); ++a)
        for (const auto& [r, v] : cols[a]) sys.at(r, (int)a) += v;
    for (const auto& [key, v] : target.terms()) sys.b[row_of(key)] = v.coef;
    return solve(std::move(sys)).has_value();
}

}  // namespace

PoleSetResult pole_set(const WeakFunction& w, int degree_bound, unsigned seed) {
    PoleSetResult res;
    res.bound = degree_bound;
    const SpacePresentation& space = *w.space;
    std::mt19937 rng(seed + 1);

    for (std::size_t c = 0; c < space.charts.size(); ++c) {
        const NormalizationChart& chart = space.charts[c];
        int k = chart.arity;
        ChartFn fn = w.on_chart((int)c);

        // Denominator locus: monomial content planes plus the residual factor.
        if (!fn.is_polynomial()) {
            Multidegree content = fn.den.holo_content();
            BiPoly residual = fn.den;
            for (int v = 1; v <= k; ++v)
                if (content[v - 1] > 0) {
                    res.components.push_back(
                        {(int)c, ChartLocus::Kind::plane, {v}, BiPoly(k)});
                    residual = residual.divide_monomial(v, content[v - 1]);
                }
            if (!residual.is_constant())
                res.components.push_back({(int)c, ChartLocus::Kind::hypersurface, {}, residual});
        }

        // Rank-drop locus of the chart map: candidate planes carrying germs
        // that are bounded yet not strongly holomorphic.
        std::vector<BiPoly> minors = chart.critical_minors();
        bool minors_trivial = minors.empty();
        for (const auto& m : minors)
            if (m.is_constant() && !m.is_zero()) minors_trivial = true;
        if (minors_trivial) continue;

        std::vector<std::vector<int>> candidates;
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            std::vector<int> S;
            for (int v = 1; v <= k; ++v)
                if (mask & (1u << (v - 1))) S.push_back(v);
            bool all_in = true;
            for (const auto& m : minors)
                if (!in_plane_ideal(m, S)) {
                    all_in = false;
                    break;
                }
            if (all_in) candidates.push_back(S);
        }
        if (candidates.empty())
            throw argument_error("critical locus has no coordinate-plane component; out of desk scope");
        // keep inclusion-minimal candidate planes
        std::vector<std::vector<int>> minimal;
        for (const auto& S : candidates) {
            bool has_smaller = false;
            for (const auto& T : candidates) {
                if (T.size() >= S.size() || T == S) continue;
                if (std::includes(S.begin(), S.end(), T.begin(), T.end())) has_smaller = true;
            }
            if (!has_smaller) minimal.push_back(S);
        }

        for (const auto& S : minimal) {
            int fails = 0, votes = 0;
            for (int sample = 0; sample < 3; ++sample) {
                auto p = random_point(rng, k, S);
                if (!fn.den.evaluate(p).is_zero()) {
                    ++votes;
                    if (!locally_strongly_holomorphic(chart, fn, p, degree_bound)) ++fails;
                }
            }
            if (votes == 0) continue;  // plane sits inside the denominator locus
            if (2 * fails > votes)
                res.components.push_back({(int)c, ChartLocus::Kind::plane, S, BiPoly(k)});
        }
    }
    return res;
}

}  // namespace rforge
