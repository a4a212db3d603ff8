#include "tqft/triangulation.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace tqft {

namespace {

// ordered vertex triple of face i (the face omits vertex i)
constexpr int kFaceVerts[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};

int edge_index(int u, int v) {
    if (u > v) std::swap(u, v);
    for (int e = 0; e < 6; ++e)
        if (kEdgeVerts[e][0] == u && kEdgeVerts[e][1] == v) return e;
    throw std::logic_error("edge_index");
}

// the three edges of face i, in position-pair order (0,1),(0,2),(1,2)
std::array<int, 3> face_edge_indices(int face) {
    const int* v = kFaceVerts[face];
    return {edge_index(v[0], v[1]), edge_index(v[0], v[2]), edge_index(v[1], v[2])};
}

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

void PseudoManifold::finalize() {
    const int T = static_cast<int>(tets.size());
    std::vector<std::vector<bool>> used(static_cast<size_t>(T), std::vector<bool>(4, false));
    for (const FaceGluing& g : gluings) {
        for (auto [t, f] : {std::pair{g.tet_a, g.face_a}, std::pair{g.tet_b, g.face_b}}) {
            if (t < 0 || t >= T || f < 0 || f > 3)
                throw MalformedDocument("gluing references a missing tetrahedron/face");
            if (used[static_cast<size_t>(t)][static_cast<size_t>(f)])
                throw InconsistentGluing("face used by more than one gluing");
            used[static_cast<size_t>(t)][static_cast<size_t>(f)] = true;
        }
        if (g.tet_a == g.tet_b && g.face_a == g.face_b)
            throw InconsistentGluing("face glued to itself");
    }
    boundary_faces_.clear();
    for (int t = 0; t < T; ++t)
        for (int f = 0; f < 4; ++f)
            if (!used[static_cast<size_t>(t)][static_cast<size_t>(f)])
                boundary_faces_.emplace_back(t, f);

    // edge classes: close the face-gluing-induced identifications
    Dsu dsu(n_slots());
    for (const FaceGluing& g : gluings) {
        auto ea = face_edge_indices(g.face_a);
        auto eb = face_edge_indices(g.face_b);
        for (int k = 0; k < 3; ++k)
            dsu.unite(6 * g.tet_a + ea[static_cast<size_t>(k)],
                      6 * g.tet_b + eb[static_cast<size_t>(k)]);
    }
    std::map<int, std::vector<int>> cls;
    for (int s = 0; s < n_slots(); ++s) cls[dsu.find(s)].push_back(s);
    classes_.clear();
    for (auto& [root, slots] : cls) classes_.push_back(std::move(slots));
    // canonical order: by minimal slot
    std::sort(classes_.begin(), classes_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    slot_class_.assign(static_cast<size_t>(n_slots()), -1);
    for (size_t c = 0; c < classes_.size(); ++c)
        for (int s : classes_[c]) slot_class_[static_cast<size_t>(s)] = static_cast<int>(c);

    // labels: document-provided names, canonical fallback
    labels_.assign(classes_.size(), "");
    for (const auto& [slot_str, label] : requested_labels) {
        auto colon = slot_str.find(':');
        if (colon == std::string::npos) throw MalformedDocument("bad edge_names key");
        int t = std::stoi(slot_str.substr(0, colon));
        std::string e = slot_str.substr(colon + 1);
        if (e.size() != 2) throw MalformedDocument("bad edge_names key");
        int ei = edge_index(e[0] - '0', e[1] - '0');
        int c = class_of_slot(6 * t + ei);
        if (!labels_[static_cast<size_t>(c)].empty() && labels_[static_cast<size_t>(c)] != label)
            throw MalformedDocument("edge_names assigns two labels to one class");
        labels_[static_cast<size_t>(c)] = label;
    }
    for (size_t c = 0; c < classes_.size(); ++c)
        if (labels_[c].empty()) labels_[c] = "e" + std::to_string(c);

    // boundary edges: any incidence on an unglued face
    boundary_class_.assign(classes_.size(), false);
    for (auto [t, f] : boundary_faces_)
        for (int e : face_edge_indices(f))
            boundary_class_[static_cast<size_t>(class_of_slot(6 * t + e))] = true;

    if (knot_edge && !class_by_label(*knot_edge))
        throw MalformedDocument("knot_edge label does not name an edge class");
}

std::optional<int> PseudoManifold::class_by_label(const std::string& label) const {
    for (size_t c = 0; c < labels_.size(); ++c)
        if (labels_[c] == label) return static_cast<int>(c);
    return std::nullopt;
}

RatRow PseudoManifold::weight_row(int cls) const {
    RatRow row(static_cast<size_t>(3 * tets.size()), Rational(0));
    for (int s : classes_[static_cast<size_t>(cls)]) {
        int t = s / 6, e = s % 6;
        row[static_cast<size_t>(3 * t + kEdgeAngle[e])] += Rational(1);
    }
    return row;
}

Rational PseudoManifold::weight(const ShapeAssignment& s, int cls) const {
    if (s.angles.size() != tets.size())
        throw std::invalid_argument("weight: shape/tet count mismatch");
    Rational w(0);
    RatRow row = weight_row(cls);
    for (size_t t = 0; t < tets.size(); ++t)
        for (int k = 0; k < 3; ++k)
            w += row[3 * t + static_cast<size_t>(k)] * s.angles[t][static_cast<size_t>(k)];
    return w;
}

PseudoManifold load_triangulation(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedDocument(std::string("bad JSON: ") + e.what());
    }
    PseudoManifold M;
    try {
        M.name = j.value("name", "");
        for (const auto& t : j.at("tets")) {
            TetRecord r;
            r.id = t.at("id").get<int>();
            r.sign = t.at("sign").get<int>();
            if (r.sign != 1 && r.sign != -1)
                throw MalformedDocument("tet sign must be +1 or -1");
            M.tets.push_back(r);
        }
        for (size_t i = 0; i < M.tets.size(); ++i)
            if (M.tets[i].id != static_cast<int>(i))
                throw MalformedDocument("tet ids must be 0..n-1 in order");
        for (const auto& g : j.at("gluings")) {
            FaceGluing fg{g.at(0).at(0).get<int>(), g.at(0).at(1).get<int>(),
                          g.at(1).at(0).get<int>(), g.at(1).at(1).get<int>()};
            M.gluings.push_back(fg);
        }
        if (j.contains("shapes")) {
            ShapeAssignment sa;
            sa.angles.resize(M.tets.size());
            for (auto it = j["shapes"].begin(); it != j["shapes"].end(); ++it) {
                int t = std::stoi(it.key());
                sa.angles.at(static_cast<size_t>(t)) = {
                    Rational::parse(it.value().at("a").get<std::string>()),
                    Rational::parse(it.value().at("b").get<std::string>()),
                    Rational::parse(it.value().at("c").get<std::string>())};
            }
            M.shapes = sa;
        }
        if (j.contains("edge_names"))
            for (auto it = j["edge_names"].begin(); it != j["edge_names"].end(); ++it)
                M.requested_labels[it.key()] = it.value().get<std::string>();
        if (j.contains("knot_edge")) M.knot_edge = j["knot_edge"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw MalformedDocument(std::string("bad document: ") + e.what());
    }
    M.finalize();
    return M;
}

PseudoManifold load_triangulation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedDocument("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_triangulation(ss.str());
}

namespace {

// full constraint matrix: per-tet sums and the requested balance rows
void append_sum_rows(const PseudoManifold& M, RatMat& A, RatRow& rhs) {
    size_t n = 3 * M.tets.size();
    for (size_t t = 0; t < M.tets.size(); ++t) {
        RatRow row(n, Rational(0));
        row[3 * t] = row[3 * t + 1] = row[3 * t + 2] = Rational(1);
        A.push_back(std::move(row));
        rhs.push_back(Rational(1, 2));
    }
}

}  // namespace

BalanceResult solve_balanced(const PseudoManifold& M, std::optional<Rational> knot_eps) {
    BalanceResult out;
    size_t n = 3 * M.tets.size();
    RatMat A;
    RatRow rhs;
    append_sum_rows(M, A, rhs);

    std::optional<int> knot_cls;
    if (knot_eps) {
        if (!M.knot_edge) throw std::invalid_argument("solve_balanced: manifold has no knot edge");
        knot_cls = M.class_by_label(*M.knot_edge);
        A.push_back(M.weight_row(*knot_cls));
        rhs.push_back(*knot_eps);
    }
    // greedy balance rows in label order; drop rows inconsistent with the family
    std::vector<int> order(static_cast<size_t>(M.edge_class_count()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return M.class_label(a) < M.class_label(b);
    });
    for (int c : order) {
        if (knot_cls && c == *knot_cls) continue;
        if (M.class_is_boundary(c)) continue;
        RatMat trial = A;
        RatRow trhs = rhs;
        trial.push_back(M.weight_row(c));
        trhs.push_back(Rational(1));
        if (solve_affine(trial, trhs)) {
            A = std::move(trial);
            rhs = std::move(trhs);
        } else {
            out.dropped_edges.push_back(M.class_label(c));
        }
    }
    auto sol = solve_affine(A, rhs);
    if (!sol) throw Infeasible("solve_balanced: balance system inconsistent");
    out.system = A;
    out.rhs = rhs;
    out.solution = *sol;

    // positive sample: maximize the minimal angle over the affine set
    // angles(t) = particular + sum_k t_k * nullspace_k
    size_t nf = sol->nullspace.size();
    RatMat G(n, RatRow(nf, Rational(0)));
    RatRow off(n, Rational(0));
    for (size_t i = 0; i < n; ++i) {
        off[i] = sol->particular[i];
        for (size_t k = 0; k < nf; ++k) G[i][k] = sol->nullspace[k][i];
    }
    std::optional<std::pair<Rational, RatRow>> best;
    if (nf == 0) {
        Rational m = off[0];
        for (const Rational& v : off) m = std::min(m, v);
        if (m > Rational(0)) best = std::make_pair(m, RatRow{});
    } else {
        best = maximize_min_margin(G, off);
    }
    if (!best || best->first <= Rational(0))
        throw Infeasible("solve_balanced: no strictly positive shape in the family");
    out.sample_margin = best->first;
    out.sample.angles.resize(M.tets.size());
    for (size_t t = 0; t < M.tets.size(); ++t)
        for (size_t k = 0; k < 3; ++k) {
            Rational v = off[3 * t + k];
            for (size_t f = 0; f < nf; ++f) v += G[3 * t + k][f] * best->second[f];
            out.sample.angles[t][k] = v;
        }
    return out;
}

RatMat reduced_balance_rowspace(const PseudoManifold& M, bool exclude_knot) {
    // substitute c_i = 1/2 - a_i - b_i; rows over (a_0, b_0, a_1, b_1, ...; const)
    std::optional<int> knot_cls;
    if (exclude_knot && M.knot_edge) knot_cls = M.class_by_label(*M.knot_edge);
    size_t T = M.tets.size();
    RatMat rows;
    for (int c = 0; c < M.edge_class_count(); ++c) {
        if (knot_cls && c == *knot_cls) continue;
        if (M.class_is_boundary(c)) continue;
        RatRow w = M.weight_row(c);
        RatRow r(2 * T + 1, Rational(0));
        Rational rhs(1);
        for (size_t t = 0; t < T; ++t) {
            Rational ca = w[3 * t], cb = w[3 * t + 1], cc = w[3 * t + 2];
            r[2 * t] = ca - cc;
            r[2 * t + 1] = cb - cc;
            rhs -= cc * Rational(1, 2);
        }
        r[2 * T] = rhs;
        rows.push_back(std::move(r));
    }
    rref(rows);
    return rows;
}

double ptolemy_flip(double a, double b, double c, double d, double e) {
    if (a <= 0 || b <= 0 || c <= 0 || d <= 0 || e <= 0)
        throw std::domain_error("ptolemy_flip: lambda-lengths must be positive");
    return (a * c + b * d) / e;
}

std::pair<double, double> ratio_compose(RatioKind kind, std::pair<double, double> x,
                                        std::pair<double, double> y) {
    auto [x1, x2] = x;
    auto [y1, y2] = y;
    if (x1 <= 0 || x2 < 0 || y1 <= 0 || y2 < 0)
        throw std::domain_error("ratio_compose: components must be positive");
    double d = x1 * y2 + x2;
    if (kind == RatioKind::dot) return {x1 * y1, d};
    return {x2 * y1 / d, y2 / d};
}

}  // namespace tqft
