#include "gcenter/window.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gcenter {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

std::vector<Scalar> unit_vec(const Field& F, int n, int k) {
    std::vector<Scalar> v(static_cast<size_t>(n), F.zero());
    v[static_cast<size_t>(k)] = F.one();
    return v;
}

std::vector<Scalar> vec_sub(const Field& F, const std::vector<Scalar>& a,
                            const std::vector<Scalar>& b) {
    std::vector<Scalar> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = F.sub(a[i], b[i]);
    return out;
}

bool vec_is_zero(const Field& F, const std::vector<Scalar>& a) {
    for (const Scalar& s : a)
        if (!F.is_zero(s)) return false;
    return true;
}

// eps in the transport rule eta_{Sigma^u X} = eps * Sigma^u(eta_X).
Scalar transport_sign(const Field& F, int t, int u, bool with_sign) {
    if (with_sign && (t % 2 != 0) && (u % 2 != 0)) return F.neg(F.one());
    return F.one();
}

} // namespace

CenterElement zero_center_element(const WindowCategory& w, int t, bool with_sign) {
    CenterElement e{t, with_sign, {}};
    const Field& F = w.field();
    for (int i = 0; i < w.object_count(); ++i)
        e.comps.emplace_back(static_cast<size_t>(w.hom_dim(i, i, t)), F.zero());
    return e;
}

CenterElement identity_center_element(const WindowCategory& w) {
    CenterElement e{0, true, {}};
    for (int i = 0; i < w.object_count(); ++i) e.comps.push_back(w.identity_coords(i));
    return e;
}

bool center_element_is_zero(const CenterElement& e) {
    for (const auto& c : e.comps)
        for (const Scalar& s : c)
            if (!(s == Scalar{0, 1})) return false;
    return true;
}

bool center_element_eq(const WindowCategory& w, const CenterElement& a, const CenterElement& b) {
    (void)w;
    return a.degree == b.degree && a.comps == b.comps;
}

CenterElement scale_center_element(const WindowCategory& w, const Scalar& s,
                                   const CenterElement& e) {
    const Field& F = w.field();
    CenterElement out = e;
    for (auto& c : out.comps)
        for (Scalar& x : c) x = F.mul(s, x);
    return out;
}

CenterElement add_center_elements(const WindowCategory& w, const CenterElement& a,
                                  const CenterElement& b) {
    require(a.degree == b.degree, "center element addition: degree mismatch");
    const Field& F = w.field();
    CenterElement out = a;
    for (size_t i = 0; i < out.comps.size(); ++i) {
        require(out.comps[i].size() == b.comps[i].size(),
                "center element addition: component shape mismatch");
        for (size_t k = 0; k < out.comps[i].size(); ++k)
            out.comps[i][k] = F.add(out.comps[i][k], b.comps[i][k]);
    }
    return out;
}

std::vector<Scalar> concat_coords(const CenterElement& e) {
    std::vector<Scalar> v;
    for (const auto& c : e.comps) v.insert(v.end(), c.begin(), c.end());
    return v;
}

CenterElement element_from_concat(const WindowCategory& w, int t, bool with_sign,
                                  const std::vector<Scalar>& v) {
    CenterElement e{t, with_sign, {}};
    size_t pos = 0;
    for (int i = 0; i < w.object_count(); ++i) {
        size_t d = static_cast<size_t>(w.hom_dim(i, i, t));
        require(pos + d <= v.size(), "element_from_concat: coordinate vector too short");
        e.comps.emplace_back(v.begin() + static_cast<long>(pos),
                             v.begin() + static_cast<long>(pos + d));
        pos += d;
    }
    require(pos == v.size(), "element_from_concat: coordinate vector too long");
    return e;
}

bool verify_center_element(const WindowCategory& w, const CenterElement& e) {
    const Field& F = w.field();
    int m = w.object_count();
    int t = e.degree;
    auto [ulo, uhi] = w.equation_range(e.with_sign);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            for (int u = ulo; u <= uhi; ++u) {
                int du = w.hom_dim(i, j, u);
                if (du == 0 || w.hom_dim(i, j, t + u) == 0) continue;
                Scalar eps = transport_sign(F, t, u, e.with_sign);
                for (int a = 0; a < du; ++a) {
                    std::vector<Scalar> f = unit_vec(F, du, a);
                    // eps * Sigma^u(eta_j) . f  vs  Sigma^t(f) . eta_i
                    std::vector<Scalar> lhs = w.compose(i, j, j, u, t, e.comps[static_cast<size_t>(j)], f);
                    for (Scalar& s : lhs) s = F.mul(eps, s);
                    std::vector<Scalar> rhs = w.compose(i, i, j, t, u, f, e.comps[static_cast<size_t>(i)]);
                    if (!vec_is_zero(F, vec_sub(F, lhs, rhs))) return false;
                }
            }
        }
    }
    return true;
}

CenterBasis solve_center(const WindowCategory& w, int t, bool with_sign) {
    const Field& F = w.field();
    auto [dlo, dhi] = w.degree_range();
    if (t < dlo || t > dhi)
        throw std::out_of_range("solve_center: degree outside the window's computed range");
    int m = w.object_count();
    CenterBasis out{t, with_sign, m == 0, {}, {}, 0,
                    Rref{ExactMatrix(F, 0, 0), {}, 0}, {}};
    for (int i = 0; i < m; ++i) {
        out.offsets.push_back(out.total);
        out.dims.push_back(w.hom_dim(i, i, t));
        out.total += out.dims.back();
    }
    if (out.total == 0) {
        out.space = Rref{ExactMatrix(F, 0, out.total), {}, 0};
        return out;
    }

    std::vector<std::vector<Scalar>> rows;
    auto [ulo, uhi] = w.equation_range(with_sign);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            for (int u = ulo; u <= uhi; ++u) {
                int du = w.hom_dim(i, j, u);
                if (du == 0) continue;
                int dT = w.hom_dim(i, j, t + u);
                if (dT == 0) continue;
                Scalar eps = transport_sign(F, t, u, with_sign);
                for (int a = 0; a < du; ++a) {
                    std::vector<Scalar> f = unit_vec(F, du, a);
                    std::vector<std::vector<Scalar>> block(
                        static_cast<size_t>(dT),
                        std::vector<Scalar>(static_cast<size_t>(out.total), F.zero()));
                    for (int b = 0; b < out.dims[static_cast<size_t>(j)]; ++b) {
                        std::vector<Scalar> g =
                            unit_vec(F, out.dims[static_cast<size_t>(j)], b);
                        std::vector<Scalar> col = w.compose(i, j, j, u, t, g, f);
                        for (int r = 0; r < dT; ++r)
                            block[static_cast<size_t>(r)]
                                 [static_cast<size_t>(out.offsets[static_cast<size_t>(j)] + b)] =
                                F.add(block[static_cast<size_t>(r)]
                                           [static_cast<size_t>(out.offsets[static_cast<size_t>(j)] + b)],
                                      F.mul(eps, col[static_cast<size_t>(r)]));
                    }
                    for (int c = 0; c < out.dims[static_cast<size_t>(i)]; ++c) {
                        std::vector<Scalar> h =
                            unit_vec(F, out.dims[static_cast<size_t>(i)], c);
                        std::vector<Scalar> col = w.compose(i, i, j, t, u, f, h);
                        for (int r = 0; r < dT; ++r)
                            block[static_cast<size_t>(r)]
                                 [static_cast<size_t>(out.offsets[static_cast<size_t>(i)] + c)] =
                                F.sub(block[static_cast<size_t>(r)]
                                           [static_cast<size_t>(out.offsets[static_cast<size_t>(i)] + c)],
                                      col[static_cast<size_t>(r)]);
                    }
                    for (auto& r : block) rows.push_back(std::move(r));
                }
            }
        }
    }

    ExactMatrix eq = rows.empty() ? ExactMatrix(F, 0, out.total)
                                  : ExactMatrix::from_rows(F, rows);
    ExactMatrix ker = kernel_basis(eq);
    out.space = rref(ker);
    for (int r = 0; r < out.space.mat.rows(); ++r) {
        CenterElement e = element_from_concat(w, t, with_sign, out.space.mat.row(r));
        if (!verify_center_element(w, e))
            throw std::logic_error("solve_center: solution fails re-verification "
                                   "against the composition tensor");
        out.elements.push_back(std::move(e));
    }
    return out;
}

CenterElement multiply_elements(const WindowCategory& w, const CenterElement& a,
                                const CenterElement& b) {
    int t = a.degree + b.degree;
    auto [dlo, dhi] = w.degree_range();
    if (t < dlo || t > dhi)
        throw std::out_of_range("product degree outside the window's computed range");
    CenterElement out{t, a.with_sign && b.with_sign, {}};
    for (int i = 0; i < w.object_count(); ++i)
        out.comps.push_back(w.compose(i, i, i, b.degree, a.degree,
                                      a.comps[static_cast<size_t>(i)],
                                      b.comps[static_cast<size_t>(i)]));
    return out;
}

std::optional<std::vector<Scalar>> coords_of(const CenterBasis& basis, const CenterElement& e) {
    if (e.degree != basis.degree) return std::nullopt;
    std::vector<Scalar> v = concat_coords(e);
    const Field& F = basis.space.mat.field();
    Rref none{ExactMatrix(F, 0, static_cast<int>(v.size())), {}, 0};
    return coords_in_quotient(basis.space, none, std::move(v));
}

std::vector<Scalar> multiply(const WindowCategory& w, const CenterBasis& b1, int i,
                             const CenterBasis& b2, int j, const CenterBasis& target) {
    require(target.degree == b1.degree + b2.degree, "multiply: target basis degree mismatch");
    CenterElement p = multiply_elements(w, b1.elements[static_cast<size_t>(i)],
                                        b2.elements[static_cast<size_t>(j)]);
    auto c = coords_of(target, p);
    if (!c)
        throw std::logic_error("multiply: product escaped the solved center space");
    return *c;
}

const std::vector<Scalar>& eval_at(const CenterElement& e, int X) {
    return e.comps.at(static_cast<size_t>(X));
}

NilpotencyVerdict nilpotency_check(const WindowCategory& w,
                                   const std::vector<CenterElement>& ideal, int bound) {
    NilpotencyVerdict v;
    if (ideal.empty() || bound <= 0) return v;
    // Depth-first over all words of length `bound`, reusing partial products.
    std::vector<int> word;
    std::vector<CenterElement> partial;
    auto describe = [&](size_t len) {
        std::ostringstream os;
        for (size_t k = 0; k < len; ++k) os << (k ? "*" : "") << "g" << word[k];
        return os.str();
    };
    // iterative stack of indices
    word.assign(static_cast<size_t>(bound), 0);
    while (true) {
        partial.clear();
        partial.push_back(ideal[static_cast<size_t>(word[0])]);
        bool zero = false;
        for (size_t k = 1; k < word.size(); ++k) {
            partial.push_back(multiply_elements(w, partial.back(),
                                                ideal[static_cast<size_t>(word[k])]));
            if (center_element_is_zero(partial.back())) {
                zero = true;
                break;
            }
        }
        if (!zero && !center_element_is_zero(partial.back())) {
            v.nilpotent = false;
            v.witness = describe(word.size()) + " != 0";
            return v;
        }
        // next word
        size_t pos = word.size();
        while (pos > 0 && word[pos - 1] + 1 == static_cast<int>(ideal.size())) --pos;
        if (pos == 0) break;
        ++word[pos - 1];
        for (size_t k = pos; k < word.size(); ++k) word[k] = 0;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Presentation matching
// ---------------------------------------------------------------------------

namespace {

struct Checker {
    RingReport rep;

    bool require(bool ok, const std::string& what) {
        if (!rep.failure.empty()) return false;
        if (ok)
            rep.checks.push_back(what);
        else
            rep.failure = what;
        return ok;
    }

    RingReport done() {
        rep.match = rep.failure.empty();
        return rep;
    }
};

std::string dim_stmt(int t, int got, int want) {
    std::ostringstream os;
    os << "degree " << t << " dimension " << got << " (expected " << want << ")";
    return os.str();
}

const CenterBasis* find_basis(const std::map<int, CenterBasis>& bases, int t) {
    auto it = bases.find(t);
    return it == bases.end() ? nullptr : &it->second;
}

// Rank of the concatenated coordinate rows of a family of elements.
int family_rank(const Field& F, const std::vector<CenterElement>& fam) {
    if (fam.empty()) return 0;
    std::vector<std::vector<Scalar>> rows;
    for (const auto& e : fam) rows.push_back(concat_coords(e));
    return rref(ExactMatrix::from_rows(F, rows)).rank;
}

// The unit must lie in the degree-0 span; returns it when it does.
bool check_unit(Checker& c, const WindowCategory& w, const CenterBasis& b0,
                CenterElement& id_out) {
    id_out = identity_center_element(w);
    bool ok = coords_of(b0, id_out).has_value();
    return c.require(ok, "identity transformation lies in the degree-0 span");
}

// Complement of the unit line inside the degree-0 span, echelonized.
std::vector<CenterElement> unit_complement(const WindowCategory& w, const CenterBasis& b0,
                                           const CenterElement& id) {
    const Field& F = w.field();
    Rref idr = rref(ExactMatrix::from_rows(F, {concat_coords(id)}));
    Rref quo = quotient_basis(b0.space.mat, idr);
    std::vector<CenterElement> out;
    for (int r = 0; r < quo.mat.rows(); ++r)
        out.push_back(element_from_concat(w, 0, b0.with_sign, quo.mat.row(r)));
    return out;
}

bool check_square_zero(Checker& c, const WindowCategory& w,
                       const std::vector<CenterElement>& gens, const std::string& label) {
    for (size_t a = 0; a < gens.size(); ++a)
        for (size_t b = 0; b < gens.size(); ++b) {
            CenterElement p = multiply_elements(w, gens[a], gens[b]);
            if (!center_element_is_zero(p)) {
                std::ostringstream os;
                os << label << ": product of generators " << a << " and " << b
                   << " does not vanish";
                return c.require(false, os.str());
            }
        }
    return c.require(true, label);
}

bool check_kills(Checker& c, const WindowCategory& w, const CenterElement& z,
                 const std::vector<CenterElement>& gens, const std::string& label) {
    for (size_t a = 0; a < gens.size(); ++a) {
        if (!center_element_is_zero(multiply_elements(w, z, gens[a])) ||
            !center_element_is_zero(multiply_elements(w, gens[a], z))) {
            std::ostringstream os;
            os << label << ": generator " << a << " survives";
            return c.require(false, os.str());
        }
    }
    return c.require(true, label);
}

// Nonzero powers p^1..p^{bound-1} independent, p^bound = 0.
bool check_nilpotent_power_basis(Checker& c, const WindowCategory& w, const CenterBasis& b0,
                                 const CenterElement& gen, int bound,
                                 const std::string& gen_name) {
    const Field& F = w.field();
    std::vector<CenterElement> powers{identity_center_element(w)};
    for (int k = 1; k < bound; ++k)
        powers.push_back(multiply_elements(w, powers.back(), gen));
    for (int k = 0; k < bound; ++k) {
        if (!c.require(coords_of(b0, powers[static_cast<size_t>(k)]).has_value(),
                       gen_name + "^" + std::to_string(k) + " lies in the degree-0 span"))
            return false;
    }
    if (!c.require(family_rank(F, powers) == bound,
                   "powers 1.." + gen_name + "^" + std::to_string(bound - 1) +
                       " are linearly independent (span degree 0)"))
        return false;
    CenterElement top = multiply_elements(w, powers.back(), gen);
    return c.require(center_element_is_zero(top),
                     gen_name + "^" + std::to_string(bound) + " = 0 on the window");
}

RingReport match_dual_numbers(const WindowCategory& w,
                              const std::map<int, CenterBasis>& bases,
                              const PresentationQuery& q) {
    Checker c;
    c.rep.target = q.name;
    const Field& F = w.field();
    const CenterBasis* b0 = find_basis(bases, 0);
    if (!c.require(b0 != nullptr, "degree-0 basis computed")) return c.done();
    int want0 = 1 + q.diagonal_count;
    if (!c.require(b0->dim() == want0, dim_stmt(0, b0->dim(), want0))) return c.done();

    CenterElement id{0, true, {}};
    if (!check_unit(c, w, *b0, id)) return c.done();
    std::vector<CenterElement> gens = unit_complement(w, *b0, id);
    if (!c.require(static_cast<int>(gens.size()) == q.diagonal_count,
                   "degree 0 splits as unit line + rank-" + std::to_string(q.diagonal_count) +
                       " complement"))
        return c.done();
    if (!check_square_zero(c, w, gens, "diagonal ideal is square-zero")) return c.done();

    int maxdeg = bases.rbegin()->first;
    for (int t = 1; t <= maxdeg; ++t) {
        const CenterBasis* bt = find_basis(bases, t);
        if (!c.require(bt != nullptr, "degree-" + std::to_string(t) + " basis computed"))
            return c.done();
        int want = (t % q.zeta_degree == 0) ? 1 : 0;
        if (!c.require(bt->dim() == want, dim_stmt(t, bt->dim(), want))) return c.done();
    }

    // zeta-power line: products of the one-dimensional pieces glue into a
    // polynomial generator, and the diagonal ideal is killed by it.
    for (int t = q.zeta_degree; t <= maxdeg; t += q.zeta_degree) {
        const CenterElement& zt = bases.at(t).elements[0];
        for (int s = q.zeta_degree; t + s <= maxdeg; s += q.zeta_degree) {
            CenterElement p = multiply_elements(w, zt, bases.at(s).elements[0]);
            auto coords = coords_of(bases.at(t + s), p);
            bool ok = coords && coords->size() == 1 && !F.is_zero((*coords)[0]);
            if (!c.require(ok, "zeta_" + std::to_string(t) + " * zeta_" + std::to_string(s) +
                                   " = zeta_" + std::to_string(t + s) +
                                   " up to a nonzero scalar"))
                return c.done();
        }
        if (!check_kills(c, w, zt, gens,
                         "zeta_" + std::to_string(t) + " kills the diagonal ideal"))
            return c.done();
    }
    return c.done();
}

RingReport match_tube(const WindowCategory& w, const std::map<int, CenterBasis>& bases,
                      const PresentationQuery& q) {
    Checker c;
    c.rep.target = q.name;
    const CenterBasis* b0 = find_basis(bases, 0);
    if (!c.require(b0 != nullptr, "degree-0 basis computed")) return c.done();
    if (!c.require(b0->dim() == q.xi_bound, dim_stmt(0, b0->dim(), q.xi_bound)))
        return c.done();
    CenterElement id{0, true, {}};
    if (!check_unit(c, w, *b0, id)) return c.done();
    if (!c.require(q.xi.has_value(), "xi generator supplied")) return c.done();
    if (!c.require(coords_of(*b0, *q.xi).has_value(), "xi lies in the degree-0 span"))
        return c.done();
    if (!check_nilpotent_power_basis(c, w, *b0, *q.xi, q.xi_bound, "xi")) return c.done();

    const CenterBasis* b1 = find_basis(bases, 1);
    if (!c.require(b1 != nullptr, "degree-1 basis computed")) return c.done();
    if (!c.require(b1->dim() == q.eta_count, dim_stmt(1, b1->dim(), q.eta_count)))
        return c.done();
    if (q.eta_count > 0) {
        if (!check_kills(c, w, *q.xi, b1->elements,
                         "xi acts as zero on the degree-1 module"))
            return c.done();
        if (!check_square_zero(c, w, b1->elements,
                               "degree-1 module is square-zero (Hom^2 vanishes)"))
            return c.done();
    }
    if (const CenterBasis* b2 = find_basis(bases, 2)) {
        if (!c.require(b2->dim() == 0, dim_stmt(2, b2->dim(), 0))) return c.done();
    }
    return c.done();
}

RingReport match_line(const WindowCategory& w, const std::map<int, CenterBasis>& bases,
                      const PresentationQuery& q) {
    Checker c;
    c.rep.target = q.name;
    const CenterBasis* b0 = find_basis(bases, 0);
    if (!c.require(b0 != nullptr, "degree-0 basis computed")) return c.done();
    if (!c.require(b0->dim() == 1, dim_stmt(0, b0->dim(), 1))) return c.done();
    CenterElement id{0, true, {}};
    if (!check_unit(c, w, *b0, id)) return c.done();
    for (const auto& [t, bt] : bases) {
        if (t == 0) continue;
        if (!c.require(bt.dim() == 0, dim_stmt(t, bt.dim(), 0))) return c.done();
    }
    return c.done();
}

RingReport match_stable(const WindowCategory& w, const std::map<int, CenterBasis>& bases,
                        const PresentationQuery& q) {
    Checker c;
    c.rep.target = q.name;
    const CenterBasis* b0 = find_basis(bases, 0);
    if (!c.require(b0 != nullptr, "degree-0 basis computed")) return c.done();
    if (!c.require(b0->dim() == q.x_bound, dim_stmt(0, b0->dim(), q.x_bound)))
        return c.done();
    CenterElement id{0, true, {}};
    if (!check_unit(c, w, *b0, id)) return c.done();
    if (!c.require(q.xgen.has_value(), "x generator supplied")) return c.done();
    if (!check_nilpotent_power_basis(c, w, *b0, *q.xgen, q.x_bound, "x")) return c.done();

    const CenterBasis* b1 = find_basis(bases, 1);
    if (!c.require(b1 != nullptr, "degree-1 basis computed")) return c.done();
    if (!c.require(b1->dim() == q.zeta_count, dim_stmt(1, b1->dim(), q.zeta_count)))
        return c.done();
    if (q.zeta_count > 0) {
        if (!check_kills(c, w, *q.xgen, b1->elements, "x kills the degree-1 zeta block"))
            return c.done();
        if (!check_square_zero(c, w, b1->elements, "zeta block is square-zero"))
            return c.done();
    }

    if (!c.require(q.tunit.has_value(), "degree-2 unit supplied")) return c.done();
    const CenterBasis* b2 = find_basis(bases, 2);
    if (!c.require(b2 != nullptr, "degree-2 basis computed")) return c.done();
    if (!c.require(coords_of(*b2, *q.tunit).has_value(), "t lies in the degree-2 span"))
        return c.done();
    // Multiplication by t is a bijection between consecutive-even bases.
    const Field& F = w.field();
    for (const auto& [d, bd] : bases) {
        const CenterBasis* bd2 = find_basis(bases, d + 2);
        if (!bd2) continue;
        if (!c.require(bd2->dim() == bd.dim(),
                       "period two: degree " + std::to_string(d) + " and " +
                           std::to_string(d + 2) + " dimensions agree"))
            return c.done();
        std::vector<CenterElement> images;
        bool in_span = true;
        for (const auto& e : bd.elements) {
            CenterElement p = multiply_elements(w, q.tunit.value(), e);
            in_span = in_span && coords_of(*bd2, p).has_value();
            images.push_back(std::move(p));
        }
        bool bij = in_span && family_rank(F, images) == bd.dim();
        if (!c.require(bij, "multiplication by t maps degree " + std::to_string(d) +
                                " isomorphically onto degree " + std::to_string(d + 2)))
            return c.done();
    }
    if (q.tinv.has_value()) {
        CenterElement p = multiply_elements(w, *q.tunit, *q.tinv);
        if (!c.require(center_element_eq(w, p, identity_center_element(w)),
                       "t * t^{-1} = 1"))
            return c.done();
    }
    return c.done();
}

RingReport match_laurent(const WindowCategory& w, const std::map<int, CenterBasis>& bases,
                         const PresentationQuery& q) {
    Checker c;
    c.rep.target = q.name;
    const Field& F = w.field();
    int p = q.zeta_degree;
    for (const auto& [d, bd] : bases) {
        int want = (((d % p) + p) % p == 0) ? 1 : 0;
        if (!c.require(bd.dim() == want, dim_stmt(d, bd.dim(), want))) return c.done();
    }
    const CenterBasis* b0 = find_basis(bases, 0);
    if (!c.require(b0 != nullptr, "degree-0 basis computed")) return c.done();
    CenterElement id{0, true, {}};
    if (!check_unit(c, w, *b0, id)) return c.done();
    const CenterBasis* bg = find_basis(bases, p);
    if (!c.require(bg != nullptr, "generator degree computed")) return c.done();
    const CenterElement& g = bg->elements[0];
    for (const auto& [d, bd] : bases) {
        if (((d % p) + p) % p != 0) continue;
        const CenterBasis* bd2 = find_basis(bases, d + p);
        if (!bd2) continue;
        CenterElement prod = multiply_elements(w, bd.elements[0], g);
        auto coords = coords_of(*bd2, prod);
        bool ok = coords && coords->size() == 1 && !F.is_zero((*coords)[0]);
        if (!c.require(ok, "generator shifts degree " + std::to_string(d) + " onto degree " +
                               std::to_string(d + p) + " (nonzero product)"))
            return c.done();
    }
    return c.done();
}

} // namespace

RingReport match_presentation(const WindowCategory& w,
                              const std::map<int, CenterBasis>& bases,
                              const PresentationQuery& q) {
    if (bases.empty()) {
        RingReport r;
        r.target = q.name;
        r.failure = "no computed bases supplied";
        return r;
    }
    switch (q.kind) {
        case PresentationKind::DualNumbers: return match_dual_numbers(w, bases, q);
        case PresentationKind::TubeTrivialExtension: return match_tube(w, bases, q);
        case PresentationKind::LineField: return match_line(w, bases, q);
        case PresentationKind::StableSerial: return match_stable(w, bases, q);
        case PresentationKind::StableLaurent: return match_laurent(w, bases, q);
    }
    throw std::logic_error("match_presentation: unknown presentation kind");
}

// ---------------------------------------------------------------------------
// KbprojWindow
// ---------------------------------------------------------------------------

KbprojWindow::KbprojWindow(const Field& f, int N, int deg_lo, int deg_hi)
    : alg_(f, 2), N_(N), deg_lo_(deg_lo), deg_hi_(deg_hi) {
    require(deg_lo <= deg_hi, "KbprojWindow: empty degree range");
    int span = std::max(N_, 0);
    ulo_ = 2 * std::min(deg_lo_, 0) - span;
    uhi_ = 2 * std::max(deg_hi_, 0) + span;
    for (int r = 0; r <= N_; ++r) objects_.push_back(interval_complex(alg_, 0, r));
    int count = static_cast<int>(objects_.size());
    homs_.reserve(static_cast<size_t>(count) * static_cast<size_t>(count) *
                  static_cast<size_t>(uhi_ - ulo_ + 1));
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j)
            for (int u = ulo_; u <= uhi_; ++u)
                homs_.emplace_back(alg_, objects_[static_cast<size_t>(i)],
                                   shift(alg_, objects_[static_cast<size_t>(j)], u));
}

std::string KbprojWindow::object_name(int i) const {
    return "A_0^" + std::to_string(i);
}

std::string KbprojWindow::describe() const {
    return "K^b(proj k[x]/(x^2)) window: interval complexes on diagonals 0.." +
           std::to_string(N_);
}

const HomSpace& KbprojWindow::hom(int i, int j, int u) const {
    if (i < 0 || i >= object_count() || j < 0 || j >= object_count())
        throw std::out_of_range("KbprojWindow: object index out of range");
    if (u < ulo_ || u > uhi_)
        throw std::out_of_range("KbprojWindow: Hom degree outside the precomputed envelope");
    size_t idx = (static_cast<size_t>(i) * static_cast<size_t>(object_count()) +
                  static_cast<size_t>(j)) *
                     static_cast<size_t>(uhi_ - ulo_ + 1) +
                 static_cast<size_t>(u - ulo_);
    return homs_[idx];
}

int KbprojWindow::hom_dim(int i, int j, int u) const { return hom(i, j, u).dim(); }

std::vector<Scalar> KbprojWindow::compose(int i, int j, int l, int t, int s,
                                          const std::vector<Scalar>& g,
                                          const std::vector<Scalar>& f) const {
    ChainMap fm = hom(i, j, t).from_coords(f);
    ChainMap gm = hom(j, l, s).from_coords(g);
    ChainMap comp = gcenter::compose(alg_, shift_map(alg_, gm, t), fm);
    return hom(i, l, s + t).coords(comp);
}

std::vector<Scalar> KbprojWindow::identity_coords(int i) const {
    return hom(i, i, 0).coords(identity_map(alg_, object(i)));
}

std::pair<int, int> KbprojWindow::equation_range(bool with_sign) const {
    // Signed families transport along suspension orbits, so naturality must
    // be imposed against morphisms into every shift of every representative.
    // Unsigned families carry no transport rule: the honest equations are
    // plain naturality among the representatives themselves.
    int span = std::max(N_, 0);
    return with_sign ? std::make_pair(-span, span) : std::make_pair(0, 0);
}

std::optional<std::vector<Scalar>> match_restriction(const CenterBasis& big,
                                                     const CenterElement& e, int shared) {
    if (big.degree != e.degree || shared > static_cast<int>(e.comps.size()) ||
        shared > static_cast<int>(big.dims.size()))
        return std::nullopt;
    const Field& F = big.space.mat.field();
    int rows = 0;
    for (int i = 0; i < shared; ++i) rows += big.dims[static_cast<size_t>(i)];
    ExactMatrix A(F, rows, big.dim());
    std::vector<Scalar> b(static_cast<size_t>(rows), F.zero());
    for (int k = 0; k < big.dim(); ++k) {
        int r = 0;
        for (int i = 0; i < shared; ++i)
            for (const Scalar& s : big.elements[static_cast<size_t>(k)].comps[static_cast<size_t>(i)])
                A.at(r++, k) = s;
    }
    {
        int r = 0;
        for (int i = 0; i < shared; ++i)
            for (const Scalar& s : e.comps[static_cast<size_t>(i)]) b[static_cast<size_t>(r++)] = s;
    }
    LinSolve ls = solve(A, b);
    if (!ls.ok) return std::nullopt;
    return ls.particular;
}

// ---------------------------------------------------------------------------
// Extension along the truncation tower of the resolution of S = A/(x)
// ---------------------------------------------------------------------------

TruncationTower::TruncationTower(const Field& f, int depth_, int t, bool with_sign)
    : depth(depth_), window(f, depth_, std::min(t, 0), std::max(t, 0)),
      basis(solve_center(window, t, with_sign)) {}

namespace {

ExtensionResult extend_impl(const KbprojWindow& w, const KbprojWindow* big,
                            const CenterBasis* big_basis, const CenterElement& e,
                            int depth) {
    require(depth >= 0, "extend_to_truncations: negative depth");
    require(static_cast<int>(e.comps.size()) == w.object_count(),
            "extend_to_truncations: element does not match the window");
    const SerialAlgebra& alg = w.algebra();
    const Field& F = alg.field();
    int t = e.degree;
    int N = w.window_size();

    // Values of e at every truncation level.  Beyond the window they come
    // from the solved center of a depth-sized window whose restriction
    // matches e.
    std::vector<std::vector<Scalar>> vals(static_cast<size_t>(depth) + 1);
    if (depth > N) {
        auto coeff = match_restriction(*big_basis, e, N + 1);
        if (!coeff)
            throw std::logic_error("extend_to_truncations: window element does not "
                                   "extend to the deeper window");
        CenterElement ext = zero_center_element(*big, t, e.with_sign);
        for (int k = 0; k < big_basis->dim(); ++k)
            ext = add_center_elements(*big,
                                      scale_center_element(*big, (*coeff)[static_cast<size_t>(k)],
                                                           big_basis->elements[static_cast<size_t>(k)]),
                                      ext);
        for (int m = 0; m <= depth; ++m) vals[static_cast<size_t>(m)] = ext.comps[static_cast<size_t>(m)];
    } else {
        for (int m = 0; m <= depth; ++m) vals[static_cast<size_t>(m)] = e.comps[static_cast<size_t>(m)];
    }

    auto getH = [&](int m) -> const HomSpace& {
        return m <= N ? w.hom(m, m, t) : big->hom(m, m, t);
    };

    Scalar minus1 = F.neg(F.one());
    ExtensionResult res{{}, true, F.zero()};
    res.levels.push_back(getH(0).from_coords(vals[0]));

    for (int m = 0; m < depth; ++m) {
        const ChainMap& prev = res.levels.back();
        ChainMap xi = getH(m + 1).from_coords(vals[static_cast<size_t>(m + 1)]);
        ChainMap j = generator_morphism(alg, 'c', 0, m, 0, m + 1);
        ChainMap lhs = gcenter::compose(alg, xi, j);
        ChainMap rhs = gcenter::compose(alg, shift_map(alg, j, t), prev);
        ChainMap delta = add(alg, lhs, scale(alg, minus1, rhs));
        std::optional<Homotopy> h = null_homotopy(alg, delta);
        if (!h)
            throw std::logic_error("extend_to_truncations: homotopy correction system "
                                   "unsolvable");

        const Complex& X1 = xi.source;  // A_0^{m+1}
        const Complex& Y1 = xi.target;  // shift(A_0^{m+1}, t)
        auto hcomp = [&](int i) -> AMat {
            int lo = h->lo;
            int hi = lo + static_cast<int>(h->maps.size()) - 1;
            if (i >= lo && i <= hi) return h->maps[static_cast<size_t>(i - lo)];
            return AMat(alg, Y1.rank(i + 1), X1.rank(i));
        };
        auto dmat = [&](const Complex& C, int i) -> AMat {
            if (i >= C.lo && i <= C.hi) return C.diff(i);
            return AMat(alg, C.rank(i - 1), C.rank(i));
        };
        ChainMap dp = zero_map(alg, X1, Y1);
        for (int i = dp.lo; i < dp.lo + static_cast<int>(dp.comps.size()); ++i) {
            AMat term = amat_add(alg, amat_mul(alg, dmat(Y1, i + 1), hcomp(i)),
                                 amat_mul(alg, hcomp(i - 1), dmat(X1, i)));
            dp.comps[static_cast<size_t>(i - dp.lo)] = std::move(term);
        }
        ChainMap next = add(alg, xi, scale(alg, minus1, dp));
        for (int i = 0; i <= m; ++i)
            if (!amat_eq(alg, next.comp(alg, i), prev.comp(alg, i))) res.stabilized = false;
        if (getH(m + 1).coords(next) != vals[static_cast<size_t>(m + 1)])
            throw std::logic_error("extend_to_truncations: corrected representative "
                                   "no longer represents the element");
        res.levels.push_back(std::move(next));
    }

    if (t >= 0 && t <= depth) {
        const ChainMap& top = res.levels.back();
        AMat comp = top.comp(alg, t);
        if (comp.rows == 1 && comp.cols == 1) res.ext_class = comp.at(0, 0).c[0];
    }
    return res;
}

} // namespace

ExtensionResult extend_to_truncations(const KbprojWindow& w, const CenterElement& e,
                                      int depth) {
    if (depth <= w.window_size()) return extend_impl(w, nullptr, nullptr, e, depth);
    TruncationTower tower(w.field(), depth, e.degree, e.with_sign);
    return extend_impl(w, &tower.window, &tower.basis, e, depth);
}

ExtensionResult extend_to_truncations(const KbprojWindow& w, const TruncationTower& tower,
                                      const CenterElement& e) {
    require(tower.basis.degree == e.degree && tower.basis.with_sign == e.with_sign,
            "extend_to_truncations: tower solved at a different degree or sign mode");
    require(tower.depth >= w.window_size(),
            "extend_to_truncations: tower shallower than the window");
    return extend_impl(w, &tower.window, &tower.basis, e, tower.depth);
}

} // namespace gcenter
