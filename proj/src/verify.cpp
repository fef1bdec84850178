#include "bbkit/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <set>
#include <thread>

#include "bbkit/conic_image.hpp"
#include "bbkit/random.hpp"
#include "bbkit/sampling.hpp"

namespace bbkit {

// ---------------------------------------------------------------- reports

void VerificationReport::record(std::initializer_list<std::string> keys, bool ok, const std::string& message, Json witness) {
    ++attempted;
    if (ok) ++passed;
    for (const auto& k : keys) {
        Tally& t = breakdown[k];
        ++t.attempted;
        if (ok) ++t.passed;
    }
    if (!ok) failures.push_back({keys.size() == 0 ? std::string() : *keys.begin(), message, std::move(witness)});
}

namespace {

void merge_json(Json& into, const Json& from) {
    for (auto it = from.begin(); it != from.end(); ++it) {
        if (!into.contains(it.key())) {
            into[it.key()] = it.value();
            continue;
        }
        Json& dst = into[it.key()];
        const Json& src = it.value();
        if (dst.is_number_integer() && src.is_number_integer()) {
            dst = dst.get<std::int64_t>() + src.get<std::int64_t>();
        } else if (dst.is_array() && src.is_array()) {
            dst.insert(dst.end(), src.begin(), src.end());
        } else if (dst.is_object() && src.is_object()) {
            merge_json(dst, src);
        } else {
            dst = src;
        }
    }
}

void bump(Json& obj, const std::string& key, std::int64_t by = 1) {
    if (!obj.is_object()) obj = Json::object();
    obj[key] = obj.value(key, std::int64_t{0}) + by;
}

}  // namespace

void VerificationReport::merge(const VerificationReport& other) {
    attempted += other.attempted;
    passed += other.passed;
    for (const auto& [k, t] : other.breakdown) {
        breakdown[k].attempted += t.attempted;
        breakdown[k].passed += t.passed;
    }
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    merge_json(details, other.details);
}

Json to_json(const VerificationReport& r) {
    Json breakdown = Json::object();
    for (const auto& [k, t] : r.breakdown) breakdown[k] = {{"attempted", t.attempted}, {"passed", t.passed}};
    Json failures = Json::array();
    for (const auto& f : r.failures) failures.push_back({{"check", f.check}, {"message", f.message}, {"witness", f.witness}});
    Json j{{"suite", r.suite},    {"p", r.p},
           {"e", r.e},            {"q", r.q},
           {"seed", r.seed},      {"attempted", r.attempted},
           {"passed", r.passed},  {"ok", r.ok()},
           {"breakdown", breakdown}, {"failures", failures},
           {"details", r.details}};
    if (r.seconds) j["seconds"] = *r.seconds;
    return j;
}

namespace {

// ---------------------------------------------------------------- plumbing

TowerPtr make_tower(const RunConfig& cfg) {
    try {
        return FieldTower::build(cfg.p, cfg.e);
    } catch (const std::exception& ex) {
        throw ConfigError(ex.what());
    }
}

BBContext make_context(const RunConfig& cfg, TowerPtr F, bool with_bose = false) {
    try {
        return BBContext::build(std::move(F), with_bose, EnumerationBudget{cfg.budget});
    } catch (const BudgetExceeded& ex) {
        throw ConfigError(ex.what());
    }
}

VerificationReport start_report(const std::string& suite, const RunConfig& cfg, const FieldTower& F) {
    VerificationReport r;
    r.suite = suite;
    r.p = F.p();
    r.e = F.e();
    r.q = F.q();
    r.seed = cfg.seed;
    return r;
}

class Stopwatch {
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Runs shard i -> report on `jobs` threads and merges in shard order, so the
// result does not depend on scheduling.
void run_shards(std::size_t n, int jobs, const std::function<VerificationReport(std::size_t)>& shard,
                VerificationReport& into) {
    std::vector<VerificationReport> parts(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                parts[i] = shard(i);
            } catch (const std::exception& ex) {
                parts[i].record("shard " + std::to_string(i), false, ex.what());
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    }
    for (const auto& part : parts) into.merge(part);
}

std::string join_messages(const std::vector<std::string>& msgs) {
    std::string out;
    for (const auto& m : msgs) out += (out.empty() ? "" : "; ") + m;
    return out;
}

std::vector<Point> sorted(std::vector<Point> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

Point random_affine(const FieldTower& F, Rng& rng) {
    Vec v = rng.vector(F, 7, Level::base);
    v[0] = F.one();
    return normalize(F, v);
}

Point random_real_at_infinity(const FieldTower& F, Rng& rng) {
    return normalize(F, lift_to_sigma_inf(rng.nonzero_vector(F, 6, Level::base)));
}

// ---------------------------------------------------------------- self-test

void selftest_spread(const BBContext& ctx, VerificationReport& rep) {
    const FieldTower& F = ctx.field();
    const RegularSpread& S = ctx.spread6();
    const std::uint64_t q = F.q();
    std::vector<char> hit(point_count(F, 5, Level::base), 0);
    for (std::size_t k = 0; k < S.size(); ++k) {
        const auto pts = subspace_points(F, S.element(k), Level::base);
        bool ok = S.element(k).dim() == 2 && pts.size() == q * q + q + 1;
        for (const Point& p : pts) {
            char& h = hit[point_index(F, p, Level::base)];
            ok = ok && h == 0;
            h = 1;
        }
        rep.record("spread.partition", ok, "element is not a plane or overlaps another", {{"element", k}});
    }
    rep.record("spread.partition", S.size() == q * q * q + 1, "wrong number of elements", {{"elements", S.size()}});
    rep.record("spread.partition", std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; }),
               "elements do not cover PG(5,q)");

    for (int i = 0; i < 3; ++i) {
        const Subspace& g = S.transversal(i);
        const bool ok = g.dim() == 1 && subspace_frob(F, g, 1) == S.transversal(i + 1) &&
                        meet(F, g, S.transversal(i + 1)).is_empty();
        rep.record("spread.transversals", ok, "transversals are not conjugate skew lines", {{"index", i}});
    }

    std::set<Point> image;
    for (std::size_t k = 0; k < S.size(); ++k) {
        const Point x = S.transversal_point(k);
        const bool ok = S.transversal(0).contains(F, x) && S.element(k).contains(F, x) &&
                        S.element_of_transversal_point(x) == k && image.insert(x).second;
        rep.record("spread.g_bijection", ok, "element and its point of g do not correspond", {{"element", k}});
    }
    const auto on_g = subspace_points(F, S.transversal(0), Level::cubic);
    const bool onto = on_g.size() == S.size() &&
                      std::all_of(on_g.begin(), on_g.end(), [&](const Point& x) { return image.count(x) == 1; });
    rep.record("spread.g_bijection", onto, "points of g missed by the elements");
}

// A line of I_BB: Sigma_inf, or the 3-space spanned by an affine point and an element.
struct BBLine {
    bool at_infinity = false;
    Subspace space;
    std::size_t element = 0;
};

BBLine affine_line(const BBContext& ctx, const Point& a, std::size_t k) {
    return {false, join(ctx.field(), span(ctx.field(), {a}), ctx.element(k)), k};
}

bool incident(const BBContext& ctx, const BBLine& l, const BBPoint& x) {
    if (l.at_infinity) return x.at_infinity;
    return x.at_infinity ? l.space.contains(ctx.field(), ctx.element(x.element)) : l.space.contains(ctx.field(), x.affine);
}

// All lines through an affine point, plus Sigma_inf.
std::vector<BBLine> lines_through(const BBContext& ctx, const Point& a) {
    std::vector<BBLine> out{{true, ctx.sigma_inf(), 0}};
    for (std::size_t k = 0; k < ctx.element_count(); ++k) out.push_back(affine_line(ctx, a, k));
    return out;
}

std::uint64_t common_points(const BBContext& ctx, const BBLine& a, const BBLine& b) {
    const FieldTower& F = ctx.field();
    std::uint64_t n = 0;
    for (std::size_t k = 0; k < ctx.element_count(); ++k)
        if (incident(ctx, a, {true, {}, k}) && incident(ctx, b, {true, {}, k})) ++n;
    if (a.at_infinity || b.at_infinity) return n;
    const Subspace m = meet(F, a.space, b.space);
    if (m.is_empty() || ctx.sigma_inf().contains(F, m)) return n;
    std::uint64_t affine = 1;
    for (int i = 0; i < m.dim(); ++i) affine *= F.q();
    return n + affine;
}

BBPoint random_bb_point(const BBContext& ctx, Rng& rng) {
    const FieldTower& F = ctx.field();
    const std::uint64_t q3 = F.size(Level::cubic);
    const std::uint64_t i = rng.below(q3 * q3 + q3 + 1);
    if (i < q3 * q3) return {false, random_affine(F, rng), 0};
    return {true, {}, static_cast<std::size_t>(i - q3 * q3)};
}

Json bb_point_json(const BBPoint& x) {
    return x.at_infinity ? Json{{"element", x.element}} : Json{{"affine", to_json(x.affine)}};
}

void selftest_ibb_exhaustive(const BBContext& ctx, VerificationReport& rep) {
    const FieldTower& F = ctx.field();
    std::vector<BBPoint> points;
    for_each_point(F, 6, Level::base, [&](std::uint64_t, const Point& p) {
        if (p[0].code != 0) points.push_back({false, p, 0});
    });
    for (std::size_t k = 0; k < ctx.element_count(); ++k) points.push_back({true, {}, k});

    std::vector<BBLine> lines{{true, ctx.sigma_inf(), 0}};
    for (std::size_t k = 0; k < ctx.element_count(); ++k)
        for (const BBPoint& a : points) {
            if (a.at_infinity) continue;
            BBLine l = affine_line(ctx, a.affine, k);
            const bool known = std::any_of(lines.begin(), lines.end(),
                                           [&](const BBLine& m) { return !m.at_infinity && m.space == l.space; });
            if (known) continue;
            rep.record("ibb.lines", l.space.dim() == 3 && meet(F, l.space, ctx.sigma_inf()) == ctx.element(k),
                       "3-space does not meet Sigma_inf in its element", {{"element", k}});
            lines.push_back(std::move(l));
        }
    const std::size_t n = points.size();
    rep.record("ibb.lines", lines.size() == n, "number of lines differs from the number of points",
               {{"points", n}, {"lines", lines.size()}});

    std::vector<std::vector<char>> inc(n, std::vector<char>(lines.size()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < lines.size(); ++j) inc[i][j] = incident(ctx, lines[j], points[i]);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            int c = 0;
            for (std::size_t j = 0; j < lines.size(); ++j) c += inc[a][j] && inc[b][j];
            rep.record("ibb.point_pairs", c == 1, std::to_string(c) + " lines through two points",
                       {{"a", bb_point_json(points[a])}, {"b", bb_point_json(points[b])}});
        }
    for (std::size_t a = 0; a < lines.size(); ++a)
        for (std::size_t b = a + 1; b < lines.size(); ++b) {
            int c = 0;
            for (std::size_t i = 0; i < n; ++i) c += inc[i][a] && inc[i][b];
            rep.record("ibb.line_pairs", c == 1, std::to_string(c) + " points on two lines", {{"a", a}, {"b", b}});
        }
}

void selftest_ibb_sampled(const BBContext& ctx, int pairs, Rng& rng, VerificationReport& rep) {
    const FieldTower& F = ctx.field();
    for (int t = 0; t < pairs; ++t) {
        BBPoint a = random_bb_point(ctx, rng), b = random_bb_point(ctx, rng);
        if (a == b) {
            --t;
            continue;
        }
        if (a.at_infinity) std::swap(a, b);
        // every line through an affine point is Sigma_inf or joins it to an element
        const Point through = a.at_infinity ? random_affine(F, rng) : a.affine;
        int c = 0;
        for (const BBLine& l : lines_through(ctx, through)) c += incident(ctx, l, a) && incident(ctx, l, b);
        rep.record("ibb.point_pairs", c == 1, std::to_string(c) + " lines through two points",
                   {{"a", bb_point_json(a)}, {"b", bb_point_json(b)}});
    }
    const std::uint64_t q3 = F.size(Level::cubic);
    auto random_line = [&]() -> BBLine {
        if (rng.below(q3 * (q3 + 1) + 1) == 0) return {true, ctx.sigma_inf(), 0};
        return affine_line(ctx, random_affine(F, rng), rng.below(ctx.element_count()));
    };
    for (int t = 0; t < pairs; ++t) {
        const BBLine a = random_line(), b = random_line();
        if (a.at_infinity == b.at_infinity && a.space == b.space) {
            --t;
            continue;
        }
        const std::uint64_t c = common_points(ctx, a, b);
        Json w{{"a", a.at_infinity ? Json("Sigma_inf") : to_json(a.space.basis())},
               {"b", b.at_infinity ? Json("Sigma_inf") : to_json(b.space.basis())}};
        rep.record("ibb.line_pairs", c == 1, std::to_string(c) + " points on two lines", std::move(w));
    }
}

// Subline {A + s lambda T} of a line through T on l_inf, and its converse.
void selftest_sublines(const BBContext& ctx, int samples, Rng& rng, VerificationReport& rep) {
    const FieldTower& F = ctx.field();
    const std::uint32_t q = F.q();
    for (int t = 0; t < samples; ++t) {
        const Vec a{F.one(), rng.element(F, Level::cubic), rng.element(F, Level::cubic)};
        const Point T = normalize(F, lift_to_sigma_inf(rng.nonzero_vector(F, 2, Level::cubic)));
        const Vec step = vec_scale(F, T.coords(), rng.nonzero(F, Level::cubic));
        std::vector<Point> images;
        for (std::uint32_t s = 0; s < q; ++s)
            images.push_back(ctx.to_bb_point(normalize(F, vec_add(F, a, vec_scale(F, step, F.element(s))))).affine);
        const Subspace line = span(F, images);
        const Subspace at_inf = meet(F, line, ctx.sigma_inf());
        const bool ok = line.dim() == 1 && at_inf.dim() == 0 &&
                        ctx.element_through(as_point(F, at_inf)) == ctx.to_bb_point(T).element;
        rep.record("subgeometry.subline_to_line", ok, "subline image is not a line through [T]",
                   {{"A", to_json(a)}, {"T", to_json(T)}, {"step", to_json(step)}});
    }
    for (int t = 0; t < samples; ++t) {
        const Point A = random_affine(F, rng), B = random_affine(F, rng);
        if (A == B) {
            --t;
            continue;
        }
        const Vec d = vec_add(F, B.coords(), vec_scale(F, A.coords(), F.neg(F.one())));
        std::set<Point> pre;
        for (std::uint32_t s = 0; s < q; ++s)
            pre.insert(ctx.from_bb_point(normalize(F, vec_add(F, A.coords(), vec_scale(F, d, F.element(s))))));
        const Point T = ctx.from_bb_element(ctx.element_through(normalize(F, d)));
        pre.insert(T);
        // the subline through X0, X1 and T
        const Point X0 = ctx.from_bb_point(A), X1 = ctx.from_bb_point(B);
        const Vec step = vec_add(F, X1.coords(), vec_scale(F, X0.coords(), F.neg(F.one())));
        std::set<Point> subline{T};
        for (std::uint32_t s = 0; s < q; ++s)
            subline.insert(normalize(F, vec_add(F, X0.coords(), vec_scale(F, step, F.element(s)))));
        const bool ok = subline.size() == q + 1 && pre == subline && span(F, {X0, X1}).contains(F, T);
        rep.record("subgeometry.line_to_subline", ok, "line preimage is not a subline",
                   {{"A", to_json(A)}, {"B", to_json(B)}});
    }
}

std::vector<std::size_t> sorted_indices(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Elements met by a plane of PG(6,q), with the dimension of each meet.
std::vector<std::size_t> elements_met(const BBContext& ctx, const Subspace& plane, bool& single_points) {
    std::vector<std::size_t> out;
    single_points = true;
    for (std::size_t k = 0; k < ctx.element_count(); ++k) {
        const Subspace m = meet(ctx.field(), plane, ctx.element(k));
        if (m.is_empty()) continue;
        out.push_back(k);
        single_points = single_points && m.dim() == 0;
    }
    return out;
}

void selftest_subplanes(const BBContext& ctx, int samples, Rng& rng, VerificationReport& rep) {
    const FieldTower& F = ctx.field();
    const std::uint32_t q = F.q();
    for (int t = 0; t < samples; ++t) {
        const SubplaneFrame pi = frame_with_line_at_infinity(F, rng.nonzero_vector(F, 3, Level::base), rng);
        std::vector<Point> images;
        std::vector<std::size_t> at_inf;
        for (const Point& x : subplane_points(F, pi)) {
            const BBPoint b = ctx.to_bb_point(x);
            if (b.at_infinity)
                at_inf.push_back(b.element);
            else
                images.push_back(b.affine);
        }
        const Subspace plane = span(F, images);
        bool single = false;
        const auto met = elements_met(ctx, plane, single);
        at_inf = sorted_indices(at_inf);
        bool ok = plane.dim() == 2 && at_inf.size() == q + 1 && single && met == at_inf;
        ok = ok && sorted_indices(ctx.spread6().regulus(at_inf[0], at_inf[1], at_inf[2])) == at_inf;
        rep.record("subgeometry.subplane_to_plane", ok, "secant subplane image does not meet exactly its regulus",
                   {{"frame", to_json(pi.M)}});
    }
    for (int t = 0; t < samples; ++t) {
        const Point A = random_affine(F, rng);
        const Point P = random_real_at_infinity(F, rng), Q = random_real_at_infinity(F, rng);
        if (ctx.element_through(P) == ctx.element_through(Q)) {
            --t;
            continue;
        }
        const Subspace plane = span(F, {A, P, Q});
        std::vector<Point> pre;
        for (const Point& x : subspace_points(F, plane, Level::base))
            if (x[0].code != 0) pre.push_back(ctx.from_bb_point(x));
        bool single = false;
        const auto met = elements_met(ctx, plane, single);
        for (std::size_t k : met) pre.push_back(ctx.from_bb_element(k));
        pre = sorted(pre);
        Json w{{"A", to_json(A)}, {"P", to_json(P)}, {"Q", to_json(Q)}};
        std::vector<Point> quad;
        for (const Point& x : pre) {
            if (quad.size() == 4) break;
            quad.push_back(x);
            if (!in_general_position(F, quad)) quad.pop_back();
        }
        bool ok = single && met.size() == q + 1 && pre.size() == q * q + q + 1 && quad.size() == 4;
        if (ok) ok = sorted(subplane_points(F, subplane_through(F, quad))) == pre;
        if (ok) ok = sorted_indices(ctx.spread6().regulus(met[0], met[1], met[2])) == met;
        rep.record("subgeometry.plane_to_subplane", ok, "plane preimage is not a secant subplane over a regulus", std::move(w));
    }
}

void selftest_embedding(const BBContext& ctx, int samples, Rng& rng, VerificationReport& rep) {
    const FieldTower& F = ctx.field();
    auto check = [&](const Point& p) {
        const Subspace cut = meet(F, ctx.bose_plane(p), ctx.sigma6());
        const BBPoint x = ctx.to_bb_point(p);
        const Subspace expected =
            x.at_infinity ? ctx.embed_in_bose(ctx.element(x.element)) : span(F, {ctx.embed_in_bose(x.affine)});
        rep.record("embedding.points", cut == expected, "Bose plane does not cut Sigma6 in the Bruck-Bose image",
                   {{"point", to_json(p)}});
    };
    if (F.q() == 2) {
        for_each_point(F, 2, Level::cubic, [&](std::uint64_t, const Point& p) { check(p); });
    } else {
        const std::uint64_t n = point_count(F, 2, Level::cubic);
        for (int t = 0; t < samples; ++t) check(point_at(F, 2, Level::cubic, rng.below(n)));
    }
    const Subspace inf = ctx.embed_in_bose(ctx.sigma_inf());
    std::set<Vec> inside, expected;
    for (std::size_t k = 0; k < ctx.spread8().size(); ++k)
        if (inf.contains(F, ctx.spread8().element(k))) inside.insert(ctx.spread8().element(k).basis().row(0));
    for (std::size_t k = 0; k < ctx.element_count(); ++k) expected.insert(ctx.embed_in_bose(ctx.element(k)).basis().row(0));
    rep.record("embedding.spread", inside == expected, "PG(8,q) spread does not restrict to the PG(5,q) spread",
               {{"inside", inside.size()}, {"expected", expected.size()}});
}

// ---------------------------------------------------------------- conic analysis

struct ConicAnalysis {
    ConicCase conic_case;
    Profile expected;
    ConicImage image;
    std::optional<SpecialReport> special;
    std::optional<std::string> classifier_error;
    std::optional<bool> recognized;  // unset when q+1 < k+3
    std::optional<bool> r_on_h;      // E1 only
    std::vector<std::string> problems;
};

ConicAnalysis analyse_conic(const BBContext& ctx, const ConicSpec& spec) {
    const FieldTower& F = ctx.field();
    ConicAnalysis a;
    a.conic_case = classify_conic_case(F, spec, line_at_infinity(F));
    a.image = conic_image(ctx, spec);
    a.expected = expected_profile(a.conic_case.label);
    const int k = a.image.curve.r;
    if (k != a.expected.k)
        a.problems.push_back("image has dimension " + std::to_string(k) + ", expected " + std::to_string(a.expected.k));
    try {
        a.special = is_3special(ctx, a.image.curve);
    } catch (const ConsistencyError& ex) {
        a.classifier_error = ex.what();
        a.problems.push_back(std::string("classifier: ") + ex.what());
    }
    if (a.special) {
        if (!a.special->is_3special)
            a.problems.push_back("image is not 3-special");
        else if (a.special->type != a.expected.type)
            a.problems.push_back("type " + std::to_string(a.special->type.value_or(0)) + ", expected " +
                                 std::to_string(a.expected.type));
    }
    if (F.q() + 1 >= static_cast<std::uint32_t>(k) + 3) {
        const auto pts = sorted(nrc_points(F, a.image.curve, Level::base));
        const auto rec = recognize(F, pts);
        a.recognized = rec && rec->r == k && sorted(nrc_points(F, *rec, Level::base)) == pts;
        if (!*a.recognized) a.problems.push_back("real point set is not recognized as the image curve");
    }
    if (a.conic_case.label == CaseLabel::E1 && a.special) {
        const Subspace h = carrier_line_h(ctx, spec.frame);
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
            const Subspace hi = subspace_frob(F, h, i);
            ok = ok && std::count_if(a.special->points.begin(), a.special->points.end(),
                                     [&](const auto& p) { return hi.contains(F, p.point); }) == 1;
        }
        a.r_on_h = ok;
        if (!ok) a.problems.push_back("the orbit of R does not meet h, h^q, h^q^2 once each");
    }
    return a;
}

std::string shape_key(const InfinityPointReport& p) {
    return std::to_string(p.w) + "," + std::to_string(p.o) + "," + std::to_string(p.s);
}

void tally_points(const SpecialReport& sr, VerificationReport& rep) {
    for (const auto& p : sr.points) {
        if (p.happy)
            bump(rep.details["happy_shapes"], shape_key(p));
        else
            bump(rep.details, "unhappy_points");
    }
}

// Records the classifier-completeness check over everything tallied so far.
void record_classifier_checks(VerificationReport& rep) {
    static const std::set<std::string> shapes{"1,3,1", "1,6,2", "2,3,2", "3,1,1", "3,2,2"};
    std::int64_t outside = 0;
    if (rep.details.contains("happy_shapes"))
        for (auto it = rep.details["happy_shapes"].begin(); it != rep.details["happy_shapes"].end(); ++it)
            if (!shapes.count(it.key())) outside += it.value().get<std::int64_t>();
    if (!rep.details.contains("classify_fatal")) rep.details["classify_fatal"] = 0;
    rep.details["happy_shape_violations"] = outside;
    rep.record("classifier", outside == 0, "happy points outside the five orbit shapes");
    rep.record("classifier", rep.details["classify_fatal"].get<std::int64_t>() == 0,
               "classify_type found a 3-special curve of no shape");
}

int default_forward_samples(std::uint32_t q) { return q <= 4 ? 50 : q <= 8 ? 20 : 10; }

std::vector<CaseLabel> reachable_labels(std::uint32_t q) {
    std::vector<CaseLabel> out;
    for (CaseLabel l : all_case_labels)
        if (case_reachable(l, q)) out.push_back(l);
    return out;
}

VerificationReport forward_shard(const BBContext& ctx, CaseLabel label, std::uint64_t seed, int samples) {
    const FieldTower& F = ctx.field();
    VerificationReport rep;
    Rng rng(seed);
    const std::string key = to_string(label);
    for (int i = 0; i < samples; ++i) {
        const auto spec = sample_conic(F, label, rng);
        if (!spec) {
            rep.record(key, false, "sampler budget exhausted", {{"seed", seed}});
            continue;
        }
        try {
            const ConicAnalysis a = analyse_conic(ctx, *spec);
            if (a.special) tally_points(*a.special, rep);
            if (a.classifier_error) bump(rep.details, "classify_fatal");
            rep.record({key, "type " + std::to_string(a.expected.type)}, a.problems.empty(), join_messages(a.problems),
                       to_json(*spec));
        } catch (const std::exception& ex) {
            rep.record(key, false, ex.what(), to_json(*spec));
        }
    }
    return rep;
}

// ---------------------------------------------------------------- converse

std::optional<QuadForm> fit_conic(const FieldTower& F, const std::vector<Point>& pts) {
    Matrix rows(0, 6);
    for (const Point& p : pts) {
        const Fe x = p[0], y = p[1], z = p[2];
        rows.append_row({F.mul(x, x), F.mul(y, y), F.mul(z, z), F.mul(y, z), F.mul(x, z), F.mul(x, y)});
    }
    const Matrix ns = nullspace(F, rows);
    if (ns.rows() != 1) return std::nullopt;
    QuadForm Q;
    for (int i = 0; i < 6; ++i) Q.c[i] = ns.at(0, i);
    return Q;
}

// The form y -> C(M y), scaled so its first nonzero coefficient is 1.
QuadForm pull_back(const FieldTower& F, const QuadForm& C, const Matrix& M) {
    const Vec u = M.column(0), v = M.column(1), w = M.column(2);
    QuadForm Q{{eval_form(F, C, u), eval_form(F, C, v), eval_form(F, C, w), polar_form(F, C, v, w),
                polar_form(F, C, u, w), polar_form(F, C, u, v)}};
    const auto lead = std::find_if(Q.c.begin(), Q.c.end(), [](Fe c) { return c.code != 0; });
    if (lead == Q.c.end()) return Q;
    const Fe s = F.inv(*lead);
    for (Fe& c : Q.c) c = F.mul(c, s);
    return Q;
}

constexpr int kGeneratorReruns = 3;

void converse_case(const BBContext& ctx, int type, std::uint64_t seed, VerificationReport& rep) {
    const FieldTower& F = ctx.field();
    const std::string key = "type " + std::to_string(type);
    std::optional<GeneratedCurve> gen;
    std::string exhausted;
    for (int rerun = 0; rerun < kGeneratorReruns && !gen; ++rerun) {
        try {
            gen = generate_3special(ctx, type, shard_seed(seed, rerun));
        } catch (const BudgetExceeded& ex) {
            bump(rep.details, "generator_reruns");
            exhausted = ex.what();
        }
    }
    if (!gen) return rep.record(key, false, exhausted, {{"seed", seed}});
    const NRC& curve = gen->curve;
    auto fail = [&](const std::string& msg) { rep.record(key, false, msg, to_json(curve)); };

    SpecialReport sr;
    try {
        sr = is_3special(ctx, curve);
    } catch (const ConsistencyError& ex) {
        bump(rep.details, "classify_fatal");
        return fail(std::string("classifier: ") + ex.what());
    }
    tally_points(sr, rep);
    if (!sr.is_3special || sr.type != type) return fail("generated curve is not 3-special of its type");

    const auto real_points = sorted(nrc_points(F, curve, Level::base));
    std::vector<Point> pre;
    for (const Point& x : real_points)
        pre.push_back(x[0].code != 0 ? ctx.from_bb_point(x) : ctx.from_bb_element(ctx.element_through(x)));
    pre = sorted(pre);
    if (pre.size() != F.q() + 1) return fail("preimage has " + std::to_string(pre.size()) + " points");

    const auto C = fit_conic(F, {pre.begin(), pre.begin() + 5});
    if (!C) return fail("five preimage points do not determine a unique conic");
    for (const Point& x : pre)
        if (eval_form(F, *C, x.coords()).code != 0) return fail("preimage point off the fitted conic");

    SubplaneFrame frame;
    try {
        frame = subplane_through(F, {pre.begin(), pre.begin() + 4});
    } catch (const std::invalid_argument&) {
        return fail("four preimage points are not a quadrangle");
    }
    for (const Point& x : pre)
        if (!in_subplane(F, frame, x)) return fail("preimage point outside the subplane of the conic");

    const ConicSpec spec{frame, pull_back(F, *C, frame.M)};
    try {
        validate(F, spec);
    } catch (const std::invalid_argument& ex) {
        return fail(std::string("fitted conic: ") + ex.what());
    }
    const ConicCase cc = classify_conic_case(F, spec, line_at_infinity(F));
    if (expected_profile(cc.label).type != type)
        return fail("preimage conic has label " + to_string(cc.label) + " of another type");
    const std::optional<Secancy> want = type == 3   ? std::optional(Secancy::tangent)
                                        : type == 4 ? std::optional(Secancy::exterior)
                                        : type >= 5 ? std::optional(Secancy::secant)
                                                    : std::nullopt;
    if (want && cc.secancy != *want) return fail("subplane is " + to_string(cc.secancy));

    if (sorted(nrc_points(F, conic_image(ctx, spec).curve, Level::base)) != real_points)
        return fail("image of the fitted conic differs from the curve");
    rep.record({key, to_string(cc.label)}, true);
}

// ---------------------------------------------------------------- case table

Json bundle_counts(const BBContext& ctx, Rng& rng, VerificationReport& rep) {
    const FieldTower& F = ctx.field();
    const std::uint64_t q = F.q();
    const Subspace linf = line_at_infinity(F);
    SubplaneFrame pi;
    do {
        pi = subplane_from_matrix(F, rng.invertible(F, 3, Level::cubic));
    } while (secancy(F, pi, linf) != Secancy::exterior);
    Json counts = Json::object();
    for (CaseLabel l : all_case_labels) counts[to_string(l)] = 0;
    std::uint64_t conics = 0;
    for_each_point(F, 5, Level::base, [&](std::uint64_t, const Point& c) {
        QuadForm Q;
        std::copy(c.coords().begin(), c.coords().end(), Q.c.begin());
        if (!is_nondegenerate(F, Q)) return;
        ++conics;
        bump(counts, to_string(classify_conic_case(F, {pi, Q}, linf).label));
    });
    const std::int64_t expected = static_cast<std::int64_t>(q * q + q + 1);
    const std::int64_t e1 = counts["E1"], e3 = counts["E3"];
    rep.record("bundle.E1", e1 == expected, "E1 count " + std::to_string(e1) + " != q^2+q+1", {{"frame", to_json(pi.M)}});
    const std::int64_t e3_expected = q % 2 == 1 ? expected : 0;
    rep.record("bundle.E3", e3 == e3_expected, "E3 count " + std::to_string(e3) + " != " + std::to_string(e3_expected),
               {{"frame", to_json(pi.M)}});
    return {{"frame", to_json(pi.M)}, {"conics", conics}, {"counts", counts}, {"expected", expected}};
}

std::string profile_key(int k, int type) { return "k=" + std::to_string(k) + ",type=" + std::to_string(type); }

}  // namespace

// ---------------------------------------------------------------- suites

VerificationReport run_selftest(const RunConfig& cfg) {
    static const std::set<std::string> parts{"spread", "ibb", "subgeometry", "embedding"};
    for (const auto& s : cfg.suites)
        if (!parts.count(s)) throw ConfigError("unknown selftest part '" + s + "'");
    auto wanted = [&](const std::string& s) {
        return cfg.suites.empty() || std::find(cfg.suites.begin(), cfg.suites.end(), s) != cfg.suites.end();
    };
    const Stopwatch clock;
    const TowerPtr F = make_tower(cfg);
    const bool bose = wanted("embedding") && F->q() <= 3;
    const BBContext ctx = make_context(cfg, F, bose);
    VerificationReport rep = start_report("selftest", cfg, *F);
    Json ran = Json::array();

    if (wanted("spread")) {
        selftest_spread(ctx, rep);
        ran.push_back("spread");
    }
    if (wanted("ibb")) {
        if (F->q() == 2) {
            selftest_ibb_exhaustive(ctx, rep);
        } else {
            Rng rng(shard_seed(cfg.seed, 1));
            selftest_ibb_sampled(ctx, cfg.samples.value_or(10'000), rng, rep);
        }
        ran.push_back("ibb");
    }
    if (wanted("subgeometry")) {
        Rng rng(shard_seed(cfg.seed, 2));
        selftest_sublines(ctx, cfg.samples.value_or(500), rng, rep);
        selftest_subplanes(ctx, cfg.samples.value_or(500), rng, rep);
        ran.push_back("subgeometry");
    }
    if (bose) {
        Rng rng(shard_seed(cfg.seed, 3));
        selftest_embedding(ctx, cfg.samples.value_or(1000), rng, rep);
        ran.push_back("embedding");
    } else if (wanted("embedding") && !cfg.suites.empty()) {
        throw ConfigError("the embedding check needs q <= 3");
    }
    rep.details["parts"] = ran;
    if (cfg.timing) rep.seconds = clock.seconds();
    return rep;
}

VerificationReport run_forward(const RunConfig& cfg) {
    const Stopwatch clock;
    const TowerPtr F = make_tower(cfg);
    if (F->q() < 3) throw ConfigError("conic suites need q >= 3");
    const BBContext ctx = make_context(cfg, F);
    VerificationReport rep = start_report("verify-forward", cfg, *F);
    const int samples = cfg.samples.value_or(default_forward_samples(F->q()));
    const auto labels = reachable_labels(F->q());
    Json skipped = Json::array();
    for (CaseLabel l : all_case_labels)
        if (!case_reachable(l, F->q())) skipped.push_back(to_string(l));
    run_shards(labels.size(), cfg.jobs, [&](std::size_t i) {
        return forward_shard(ctx, labels[i], shard_seed(cfg.seed, static_cast<std::uint64_t>(labels[i])), samples);
    }, rep);
    record_classifier_checks(rep);
    rep.details["samples_per_label"] = samples;
    rep.details["skipped_labels"] = skipped;
    if (cfg.timing) rep.seconds = clock.seconds();
    return rep;
}

VerificationReport run_converse(const RunConfig& cfg) {
    const Stopwatch clock;
    const TowerPtr F = make_tower(cfg);
    if (F->q() < 8) throw ConfigError("the converse suite needs q >= 8");
    const BBContext ctx = make_context(cfg, F);
    VerificationReport rep = start_report("verify-converse", cfg, *F);
    const int samples = cfg.samples.value_or(10);
    run_shards(6, cfg.jobs, [&](std::size_t i) {
        VerificationReport part;
        const int type = static_cast<int>(i) + 1;
        for (int s = 0; s < samples; ++s) {
            const std::uint64_t seed = shard_seed(shard_seed(cfg.seed, 100 + type), s);
            try {
                converse_case(ctx, type, seed, part);
            } catch (const std::exception& ex) {
                part.record("type " + std::to_string(type), false, ex.what(), {{"seed", seed}});
            }
        }
        return part;
    }, rep);
    record_classifier_checks(rep);
    rep.details["samples_per_type"] = samples;
    if (cfg.timing) rep.seconds = clock.seconds();
    return rep;
}

VerificationReport run_case_table(const RunConfig& cfg) {
    const Stopwatch clock;
    const TowerPtr F = make_tower(cfg);
    if (F->q() < 3) throw ConfigError("conic suites need q >= 3");
    const BBContext ctx = make_context(cfg, F);
    VerificationReport rep = start_report("case-table", cfg, *F);
    const int samples = cfg.samples.value_or(10);
    const auto labels = reachable_labels(F->q());

    run_shards(labels.size(), cfg.jobs, [&](std::size_t i) {
        VerificationReport part;
        const CaseLabel label = labels[i];
        const std::string key = to_string(label);
        const Profile want = expected_profile(label);
        Rng rng(shard_seed(cfg.seed, 200 + static_cast<std::uint64_t>(label)));
        for (int s = 0; s < samples; ++s) {
            const auto spec = sample_conic(*F, label, rng);
            if (!spec) {
                part.record(key, false, "sampler budget exhausted");
                continue;
            }
            const ConicImage img = conic_image(ctx, *spec);
            const SpecialReport sr = is_3special(ctx, img.curve);
            const int type = sr.type.value_or(0);
            bump(part.details["observed"][key], profile_key(img.curve.r, type));
            part.record(key, img.curve.r == want.k && type == want.type,
                        "observed " + profile_key(img.curve.r, type) + ", expected " + profile_key(want.k, want.type),
                        to_json(*spec));
        }
        return part;
    }, rep);

    Json expected = Json::object();
    for (CaseLabel l : all_case_labels) {
        const Profile p = expected_profile(l);
        expected[to_string(l)] = profile_key(p.k, p.type);
    }
    rep.details["expected"] = expected;
    Json diff = Json::array();
    if (rep.details.contains("observed"))
        for (auto it = rep.details["observed"].begin(); it != rep.details["observed"].end(); ++it)
            for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
                if (jt.key() != expected[it.key()]) diff.push_back({{"label", it.key()}, {"observed", jt.key()}});
    rep.details["diff"] = diff;

    if (F->q() <= 5) {
        Rng rng(shard_seed(cfg.seed, 300));
        rep.details["bundle"] = bundle_counts(ctx, rng, rep);
    } else {
        rep.details["bundle"] = "skipped: exhaustive form enumeration runs for q <= 5";
    }
    if (cfg.timing) rep.seconds = clock.seconds();
    return rep;
}

Json map_conic(const BBContext& ctx, const ConicSpec& spec) {
    const FieldTower& F = ctx.field();
    validate(F, spec);
    const ConicAnalysis a = analyse_conic(ctx, spec);
    Json affine = Json::array();
    for (const Point& p : a.image.affine) affine.push_back(to_json(p));
    Json j;
    j["conic"] = to_json(spec);
    j["label"] = to_string(a.conic_case.label);
    j["secancy"] = to_string(a.conic_case.secancy);
    j["expected"] = {{"k", a.expected.k}, {"type", a.expected.type}};
    j["image"] = {{"affine", affine}, {"elements", a.image.elements}, {"k", a.image.curve.r}, {"curve", to_json(a.image.curve)}};
    j["recognized"] = a.recognized ? Json(*a.recognized) : Json(nullptr);
    j["special"] = a.special ? to_json(F, *a.special) : Json(nullptr);
    if (a.r_on_h) j["r_on_h"] = *a.r_on_h;
    j["problems"] = a.problems;
    j["match"] = a.problems.empty();
    return j;
}

Json classify_curve(const BBContext& ctx, const NRC& curve) {
    const FieldTower& F = ctx.field();
    Json j{{"curve", to_json(curve)}};
    try {
        j["special"] = to_json(F, is_3special(ctx, curve));
    } catch (const ConsistencyError& ex) {
        j["special"] = nullptr;
        j["classifier_error"] = ex.what();
    }
    return j;
}

}  // namespace bbkit
