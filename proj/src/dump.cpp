#include "gcenter/dump.hpp"

#include <cstdlib>
#include <exception>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "gcenter/quiver.hpp"
#include "gcenter/stable.hpp"

namespace gcenter {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Configs and window construction
// ---------------------------------------------------------------------------

std::string validate_config(const RunConfig& cfg) {
    const bool kb = cfg.category == "kbproj-serial";
    const bool tube = cfg.category == "tube";
    const bool line = cfg.category == "line";
    const bool stable = cfg.category == "stable-serial";
    if (!kb && !tube && !line && !stable)
        return "unknown category '" + cfg.category +
               "' (expected kbproj-serial, tube, line or stable-serial)";
    try {
        (void)Field::parse_name(cfg.field);
    } catch (const std::exception& ex) {
        return std::string("bad field: ") + ex.what();
    }
    if (cfg.deg_lo > cfg.deg_hi) return "empty degree range";
    if (kb && cfg.n != 2) return "category kbproj-serial requires n = 2";
    if (kb && cfg.window < 0) return "kbproj-serial window must be >= 0";
    if (tube && cfg.n < 1) return "category tube requires n >= 1";
    if (tube && cfg.window < 1) return "tube window (length bound) must be >= 1";
    if (line && cfg.n < 1) return "category line requires n >= 1";
    if ((tube || line) && (cfg.deg_lo < -2 || cfg.deg_hi > 2))
        return "tube/line degrees are limited to [-2, 2] (hereditary: higher "
               "degrees vanish)";
    if (stable && cfg.n < 2) return "category stable-serial requires n >= 2";
    return "";
}

std::unique_ptr<WindowCategory> build_window(const RunConfig& cfg) {
    std::string err = validate_config(cfg);
    if (!err.empty()) throw std::invalid_argument(err);
    Field F = Field::parse_name(cfg.field);
    if (cfg.category == "kbproj-serial")
        return std::make_unique<KbprojWindow>(F, cfg.window, cfg.deg_lo, cfg.deg_hi);
    if (cfg.category == "tube")
        return std::make_unique<NilpQuiverWindow>(
            NilpQuiverWindow::cyclic(F, cfg.n, cfg.window));
    if (cfg.category == "line")
        return std::make_unique<NilpQuiverWindow>(NilpQuiverWindow::line(F, cfg.n));
    return std::make_unique<StableWindow>(F, cfg.n, cfg.deg_lo, cfg.deg_hi);
}

PresentationQuery presentation_query_for(const WindowCategory& w, const RunConfig& cfg) {
    if (cfg.category == "kbproj-serial") {
        Field F = Field::parse_name(cfg.field);
        PresentationQuery q;
        q.kind = PresentationKind::DualNumbers;
        q.zeta_degree = (!cfg.with_sign || F.characteristic() == 2) ? 1 : 2;
        q.diagonal_count = cfg.window + 1;
        std::ostringstream os;
        os << "polynomial line on a degree-" << q.zeta_degree << " class over a rank-"
           << q.diagonal_count << " square-zero diagonal ideal";
        q.name = os.str();
        return q;
    }
    if (cfg.category == "tube")
        return tube_query(dynamic_cast<const NilpQuiverWindow&>(w));
    if (cfg.category == "line")
        return line_query(dynamic_cast<const NilpQuiverWindow&>(w));
    const auto& sw = dynamic_cast<const StableWindow&>(w);
    return sw.modulus() == 2 ? laurent_query(sw) : stable_query(sw);
}

// ---------------------------------------------------------------------------
// Dump assembly
// ---------------------------------------------------------------------------

int thread_budget() {
    if (const char* env = std::getenv("GCENTER_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min(v, 64L));
        return 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

CenterDump compute_dump(const RunConfig& cfg) {
    std::unique_ptr<WindowCategory> w = build_window(cfg);
    const int count = cfg.deg_hi - cfg.deg_lo + 1;

    std::vector<std::optional<CenterBasis>> solved(static_cast<size_t>(count));
    int workers = std::min(thread_budget(), count);
    if (workers <= 1) {
        for (int k = 0; k < count; ++k)
            solved[static_cast<size_t>(k)] = solve_center(*w, cfg.deg_lo + k, cfg.with_sign);
    } else {
        std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
        std::vector<std::thread> pool;
        for (int tnum = 0; tnum < workers; ++tnum)
            pool.emplace_back([&, tnum] {
                try {
                    for (int k = tnum; k < count; k += workers)
                        solved[static_cast<size_t>(k)] =
                            solve_center(*w, cfg.deg_lo + k, cfg.with_sign);
                } catch (...) {
                    errors[static_cast<size_t>(tnum)] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& err : errors)
            if (err) std::rethrow_exception(err);
    }

    std::map<int, CenterBasis> bases;
    for (int k = 0; k < count; ++k)
        bases.emplace(cfg.deg_lo + k, std::move(*solved[static_cast<size_t>(k)]));

    CenterDump d;
    d.config = cfg;
    for (int t = cfg.deg_lo; t <= cfg.deg_hi; ++t) {
        const CenterBasis& bt = bases.at(t);
        DegreeBlock blk;
        blk.degree = t;
        blk.dimension = bt.dim();
        for (const CenterElement& e : bt.elements) blk.basis.push_back(e.comps);
        for (int t2 = cfg.deg_lo; t2 <= cfg.deg_hi; ++t2) {
            int target = t + t2;
            if (target < cfg.deg_lo || target > cfg.deg_hi) continue;
            MultTable mt;
            mt.right_degree = t2;
            mt.target_degree = target;
            const CenterBasis& b2 = bases.at(t2);
            const CenterBasis& bt3 = bases.at(target);
            for (int i = 0; i < bt.dim(); ++i) {
                mt.table.emplace_back();
                for (int j = 0; j < b2.dim(); ++j)
                    mt.table.back().push_back(multiply(*w, bt, i, b2, j, bt3));
            }
            blk.mult.push_back(std::move(mt));
        }
        d.degrees.push_back(std::move(blk));
    }
    d.ring_report = match_presentation(*w, bases, presentation_query_for(*w, cfg));
    return d;
}

// ---------------------------------------------------------------------------
// JSON round trip
// ---------------------------------------------------------------------------

namespace {

json scalars_to_json(const Field& F, const std::vector<Scalar>& v) {
    json a = json::array();
    for (const Scalar& s : v) a.push_back(F.to_string(s));
    return a;
}

std::vector<Scalar> scalars_from_json(const Field& F, const json& a) {
    std::vector<Scalar> v;
    for (const auto& s : a) v.push_back(F.parse(s.get<std::string>()));
    return v;
}

} // namespace

std::string dump_to_json(const CenterDump& d) {
    Field F = Field::parse_name(d.config.field);
    json j;
    j["schema_version"] = d.schema_version;
    j["config"] = {{"category", d.config.category},
                   {"n", d.config.n},
                   {"field", d.config.field},
                   {"window", d.config.window},
                   {"degrees", {d.config.deg_lo, d.config.deg_hi}},
                   {"signed", d.config.with_sign}};
    json degs = json::array();
    for (const DegreeBlock& blk : d.degrees) {
        json b;
        b["degree"] = blk.degree;
        b["dimension"] = blk.dimension;
        json basis = json::array();
        for (const auto& elem : blk.basis) {
            json comps = json::array();
            for (const auto& c : elem) comps.push_back(scalars_to_json(F, c));
            basis.push_back(comps);
        }
        b["basis"] = basis;
        json mult = json::array();
        for (const MultTable& mt : blk.mult) {
            json m;
            m["right_degree"] = mt.right_degree;
            m["target_degree"] = mt.target_degree;
            json table = json::array();
            for (const auto& row : mt.table) {
                json r = json::array();
                for (const auto& coords : row) r.push_back(scalars_to_json(F, coords));
                table.push_back(r);
            }
            m["table"] = table;
            mult.push_back(m);
        }
        b["mult"] = mult;
        degs.push_back(b);
    }
    j["degrees"] = degs;
    j["ring_report"] = {{"match", d.ring_report.match},
                        {"target", d.ring_report.target},
                        {"checks", d.ring_report.checks},
                        {"failure", d.ring_report.failure}};
    return j.dump(2) + "\n";
}

CenterDump dump_from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        CenterDump d;
        d.schema_version = j.at("schema_version").get<int>();
        const json& c = j.at("config");
        d.config.category = c.at("category").get<std::string>();
        d.config.n = c.at("n").get<int>();
        d.config.field = c.at("field").get<std::string>();
        d.config.window = c.at("window").get<int>();
        d.config.deg_lo = c.at("degrees").at(0).get<int>();
        d.config.deg_hi = c.at("degrees").at(1).get<int>();
        d.config.with_sign = c.at("signed").get<bool>();
        Field F = Field::parse_name(d.config.field);
        for (const json& b : j.at("degrees")) {
            DegreeBlock blk;
            blk.degree = b.at("degree").get<int>();
            blk.dimension = b.at("dimension").get<int>();
            for (const json& elem : b.at("basis")) {
                blk.basis.emplace_back();
                for (const json& comps : elem)
                    blk.basis.back().push_back(scalars_from_json(F, comps));
            }
            for (const json& m : b.at("mult")) {
                MultTable mt;
                mt.right_degree = m.at("right_degree").get<int>();
                mt.target_degree = m.at("target_degree").get<int>();
                for (const json& row : m.at("table")) {
                    mt.table.emplace_back();
                    for (const json& coords : row)
                        mt.table.back().push_back(scalars_from_json(F, coords));
                }
                blk.mult.push_back(std::move(mt));
            }
            d.degrees.push_back(std::move(blk));
        }
        const json& r = j.at("ring_report");
        d.ring_report.match = r.at("match").get<bool>();
        d.ring_report.target = r.at("target").get<std::string>();
        for (const json& s : r.at("checks"))
            d.ring_report.checks.push_back(s.get<std::string>());
        d.ring_report.failure = r.at("failure").get<std::string>();
        return d;
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("malformed dump: ") + ex.what());
    }
}

std::string dump_to_csv(const CenterDump& d) {
    std::ostringstream os;
    os << "degree,dimension\n";
    for (const DegreeBlock& blk : d.degrees) os << blk.degree << "," << blk.dimension << "\n";
    return os.str();
}

std::map<int, CenterBasis> bases_from_dump(const WindowCategory& w, const CenterDump& d) {
    const Field& F = w.field();
    std::map<int, CenterBasis> out;
    for (const DegreeBlock& blk : d.degrees) {
        CenterBasis cb{blk.degree, d.config.with_sign, w.object_count() == 0, {}, {}, 0,
                       Rref{ExactMatrix(F, 0, 0), {}, 0}, {}};
        for (int i = 0; i < w.object_count(); ++i) {
            cb.offsets.push_back(cb.total);
            cb.dims.push_back(w.hom_dim(i, i, blk.degree));
            cb.total += cb.dims.back();
        }
        std::vector<std::vector<Scalar>> rows;
        for (const auto& comps : blk.basis) {
            CenterElement e{blk.degree, d.config.with_sign, comps};
            if (static_cast<int>(concat_coords(e).size()) != cb.total)
                throw std::invalid_argument("dump basis element does not fit the window");
            if (!verify_center_element(w, e))
                throw std::invalid_argument("dump basis element fails the naturality "
                                            "equations of the window");
            rows.push_back(concat_coords(e));
            cb.elements.push_back(std::move(e));
        }
        cb.space = rows.empty() ? Rref{ExactMatrix(F, 0, cb.total), {}, 0}
                                : rref(ExactMatrix::from_rows(F, rows));
        if (cb.space.rank != static_cast<int>(cb.elements.size()))
            throw std::invalid_argument("dump basis rows are linearly dependent");
        out.emplace(blk.degree, std::move(cb));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification suites
// ---------------------------------------------------------------------------

namespace {

struct Suite {
    SuiteReport rep;

    explicit Suite(std::string name) { rep.suite = std::move(name); }

    bool check(bool ok, const std::string& what) {
        rep.lines.push_back((ok ? "ok   " : "FAIL ") + what);
        rep.pass = rep.pass && ok;
        return ok;
    }
};

std::vector<int> dim_table(const WindowCategory& w, int lo, int hi, bool with_sign) {
    std::vector<int> dims;
    for (int t = lo; t <= hi; ++t) dims.push_back(solve_center(w, t, with_sign).dim());
    return dims;
}

// Multiplication-by-x class on the diagonal-r representative of the
// perfect-complex window (x placed in the bottom degree).
CenterElement kb_eta(const KbprojWindow& w, int r) {
    CenterElement e = zero_center_element(w, 0, true);
    ChainMap xr = generator_morphism(w.algebra(), 'a', 0, r, 0, r);
    e.comps[static_cast<size_t>(r)] = w.hom(r, r, 0).coords(xr);
    return e;
}

// Degree-t class with component (-1)^{t i + t(t-1)/2} in chain degree i of
// every representative of diagonal >= t; normalized to be multiplicative.
CenterElement kb_zeta(const KbprojWindow& w, int t, bool with_sign) {
    const SerialAlgebra& alg = w.algebra();
    const Field& F = alg.field();
    CenterElement e = zero_center_element(w, t, with_sign);
    for (int r = t; r < w.object_count(); ++r) {
        const Complex& x = w.object(r);
        ChainMap f = zero_map(alg, x, shift(alg, x, t));
        for (int i = t; i <= r; ++i) {
            long long sgn = ((t * i + t * (t - 1) / 2) % 2 == 0) ? 1 : -1;
            f.comps[static_cast<size_t>(i - f.lo)].at(0, 0) = alg.scalar(F.from_int(sgn));
        }
        e.comps[static_cast<size_t>(r)] = w.hom(r, r, t).coords(f);
    }
    return e;
}

std::string join_dims(const std::vector<int>& dims) {
    std::ostringstream os;
    for (size_t i = 0; i < dims.size(); ++i) os << (i ? " " : "") << dims[i];
    return os.str();
}

SuiteReport suite_dual_numbers() {
    Suite s("dual-numbers");
    Field F101 = Field::fp(101);
    KbprojWindow w(F101, 8, -2, 4);
    auto signed_dims = dim_table(w, -2, 4, true);
    s.check(signed_dims == std::vector<int>{0, 0, 10, 0, 1, 0, 1},
            "f101 signed dimensions at degrees -2..4 are 0 0 10 0 1 0 1 (got " +
                join_dims(signed_dims) + ")");
    auto plain_dims = dim_table(w, 1, 4, false);
    s.check(plain_dims == std::vector<int>{1, 1, 1, 1},
            "f101 transport-free dimensions at degrees 1..4 are 1 1 1 1");

    std::vector<CenterElement> etas;
    CenterBasis b0 = solve_center(w, 0, true);
    bool all_in = true;
    for (int r = 0; r <= 8; ++r) {
        etas.push_back(kb_eta(w, r));
        all_in = all_in && coords_of(b0, etas.back()).has_value();
    }
    s.check(all_in, "the nine diagonal classes lie in the solved degree-0 space");
    s.check(nilpotency_check(w, etas, 2).nilpotent,
            "every product of two diagonal classes vanishes");

    std::map<int, CenterBasis> bases;
    for (int t = -2; t <= 4; ++t) bases.emplace(t, solve_center(w, t, true));
    RunConfig cfg;
    cfg.category = "kbproj-serial";
    cfg.window = 8;
    RingReport rep = match_presentation(w, bases, presentation_query_for(w, cfg));
    s.check(rep.match, "f101 ring presentation: " + rep.target +
                           (rep.match ? "" : " -- " + rep.failure));

    Field F2 = Field::fp(2);
    KbprojWindow w2(F2, 8, 0, 4);
    auto f2_dims = dim_table(w2, 1, 4, true);
    s.check(f2_dims == std::vector<int>{1, 1, 1, 1},
            "f2 signed dimensions at degrees 1..4 are 1 1 1 1");
    std::map<int, CenterBasis> bases2;
    for (int t = 0; t <= 4; ++t) bases2.emplace(t, solve_center(w2, t, true));
    cfg.field = "f2";
    RingReport rep2 = match_presentation(w2, bases2, presentation_query_for(w2, cfg));
    s.check(rep2.match, "f2 ring presentation: " + rep2.target +
                            (rep2.match ? "" : " -- " + rep2.failure));
    return s.rep;
}

SuiteReport suite_tube() {
    Suite s("tube");
    Field F = Field::fp(101);
    for (int n : {1, 2, 3}) {
        auto w = NilpQuiverWindow::cyclic(F, n, 10);
        int d0 = solve_center(w, 0, true).dim();
        int d1 = solve_center(w, 1, true).dim();
        int d2 = solve_center(w, 2, true).dim();
        std::ostringstream os;
        os << "cyclic quiver on " << n << " vertices, length bound 10: degree-0 dim "
           << d0 << ", degree-1 dim " << d1 << ", degree-2 dim " << d2;
        s.check(d0 == 9 / n + 1 && d1 == (n == 1 ? 10 : 0) && d2 == 0, os.str());
    }
    auto w1 = NilpQuiverWindow::cyclic(F, 1, 10);
    CenterElement xi = xi_element(w1);
    CenterElement power = xi;
    for (int k = 2; k <= 9; ++k) power = multiply_elements(w1, power, xi);
    s.check(!center_element_is_zero(power) &&
                center_element_is_zero(multiply_elements(w1, power, xi)),
            "one-vertex tube: xi^9 is nonzero and xi^10 vanishes");
    std::map<int, CenterBasis> bases;
    for (int t = 0; t <= 2; ++t) bases.emplace(t, solve_center(w1, t, true));
    RingReport rep = match_presentation(w1, bases, tube_query(w1));
    s.check(rep.match, "one-vertex tube presentation: " + rep.target +
                           (rep.match ? "" : " -- " + rep.failure));
    return s.rep;
}

SuiteReport suite_line() {
    Suite s("line");
    Field F = Field::fp(101);
    for (int m = 2; m <= 6; ++m) {
        auto w = NilpQuiverWindow::line(F, m);
        std::map<int, CenterBasis> bases;
        for (int t = 0; t <= 2; ++t) bases.emplace(t, solve_center(w, t, true));
        RingReport rep = match_presentation(w, bases, line_query(w));
        std::ostringstream os;
        os << "line quiver on " << m << " vertices: center is the ground field";
        s.check(rep.match, os.str() + (rep.match ? "" : " -- " + rep.failure));
    }
    return s.rep;
}

SuiteReport suite_stable() {
    Suite s("stable");
    for (long long p : {2LL, 101LL}) {
        Field F = Field::fp(p);
        for (int n = 2; n <= 7; ++n) {
            StableWindow w(F, n, -2, 3);
            bool dims_ok = true;
            for (int t = -2; t <= 3; ++t) {
                int even = n / 2;
                int odd = (p == 2 && n % 2 == 0) ? n / 2 : (n - 1) / 2;
                int want = (((t % 2) + 2) % 2 == 0) ? even : odd;
                dims_ok = dims_ok && solve_center(w, t, true).dim() == want;
            }
            std::map<int, CenterBasis> bases;
            for (int t = -2; t <= 3; ++t) bases.emplace(t, solve_center(w, t, true));
            PresentationQuery q = n == 2 ? laurent_query(w) : stable_query(w);
            RingReport rep = match_presentation(w, bases, q);
            std::ostringstream os;
            os << "modulus " << n << " over f" << p
               << ": dimension table and presentation (" << rep.target << ")";
            s.check(dims_ok && rep.match,
                    os.str() + (rep.match ? "" : " -- " + rep.failure));
        }
    }
    return s.rep;
}

SuiteReport suite_extension() {
    Suite s("extension");
    Field F = Field::fp(101);
    KbprojWindow w(F, 8, 0, 4);
    const int depth = 12;
    for (bool with_sign : {true, false}) {
        for (int t = 0; t <= 4; ++t) {
            CenterBasis bt = solve_center(w, t, with_sign);
            if (bt.dim() == 0) continue;
            TruncationTower tower(F, depth, t, with_sign);
            bool all_ok = true;
            for (const CenterElement& e : bt.elements) {
                ExtensionResult ext = extend_to_truncations(w, tower, e);
                all_ok = all_ok && ext.stabilized &&
                         static_cast<int>(ext.levels.size()) == depth + 1;
            }
            std::ostringstream os;
            os << "every " << (with_sign ? "signed" : "transport-free") << " degree-"
               << t << " basis element (dim " << bt.dim()
               << ") extends to truncation depth " << depth << " and stabilizes";
            s.check(all_ok, os.str());
        }
    }
    TruncationTower t0(F, depth, 0, true);
    ExtensionResult id_ext = extend_to_truncations(w, t0, identity_center_element(w));
    s.check(id_ext.ext_class == F.one(), "the identity extends with unit class");
    ExtensionResult eta_ext = extend_to_truncations(w, t0, kb_eta(w, 3));
    s.check(F.is_zero(eta_ext.ext_class), "a diagonal class extends with zero class");
    return s.rep;
}

SuiteReport suite_singularity() {
    Suite s("singularity");
    Field F = Field::fp(101);
    KbprojWindow kb(F, 8, 0, 4);
    StableWindow st(F, 2, -2, 5);
    const int depth = 12;
    TruncationTower t0(F, depth, 0, true);

    SingularityImage id = singularity_map(kb, st, t0, identity_center_element(kb));
    s.check(id.stabilized && id.cls == F.one() &&
                center_element_eq(st, id.value, identity_center_element(st)),
            "identity maps to the stable identity");

    bool etas_die = true;
    for (int r = 0; r <= 8; ++r) {
        SingularityImage im = singularity_map(kb, st, t0, kb_eta(kb, r));
        etas_die = etas_die && im.stabilized && F.is_zero(im.cls);
    }
    s.check(etas_die, "all nine diagonal classes map to zero");

    TruncationTower t2(F, depth, 2, true);
    CenterElement z2 = kb_zeta(kb, 2, true);
    SingularityImage iz = singularity_map(kb, st, t2, z2);
    s.check(iz.stabilized && !F.is_zero(iz.cls) &&
                center_element_eq(st, iz.value,
                                  scale_center_element(st, iz.cls, shift_unit(st, 2))),
            "the degree-2 generator maps to a nonzero multiple of the shift unit");

    SingularityImage iz4 = singularity_map(kb, st, multiply_elements(kb, z2, z2), depth);
    s.check(iz4.cls == F.mul(iz.cls, iz.cls),
            "images multiply: the square of the generator maps to the squared class");

    // Kernel: expanding each degree-0 basis element over {identity, diagonal
    // classes}, the induced class is exactly the identity coefficient.
    CenterBasis b0 = solve_center(kb, 0, true);
    std::vector<std::vector<Scalar>> rows{concat_coords(identity_center_element(kb))};
    for (int r = 0; r <= 8; ++r) rows.push_back(concat_coords(kb_eta(kb, r)));
    ExactMatrix fam = ExactMatrix::from_rows(F, rows).transposed();
    bool kernel_ok = true;
    for (const CenterElement& e : b0.elements) {
        LinSolve ls = solve(fam, concat_coords(e));
        SingularityImage im = singularity_map(kb, st, t0, e);
        kernel_ok = kernel_ok && ls.ok && im.cls == ls.particular[0];
    }
    s.check(kernel_ok,
            "degree 0: the kernel is exactly the span of the diagonal classes");
    return s.rep;
}

} // namespace

SuiteReport run_suite(const std::string& name) {
    if (name == "dual-numbers") return suite_dual_numbers();
    if (name == "tube") return suite_tube();
    if (name == "line") return suite_line();
    if (name == "stable") return suite_stable();
    if (name == "extension") return suite_extension();
    if (name == "singularity") return suite_singularity();
    throw std::invalid_argument("unknown suite '" + name +
                                "' (expected dual-numbers, tube, line, stable, "
                                "extension or singularity)");
}

} // namespace gcenter
