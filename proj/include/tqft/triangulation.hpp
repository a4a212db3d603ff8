#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tqft/rational.hpp"

namespace tqft {

struct MalformedDocument : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconsistentGluing : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Tetrahedral edges in vertex-pair order 01,02,03,12,13,23.
/// Opposite pairs carry equal dihedral angles: 01/23 -> a, 02/13 -> b, 03/12 -> c.
inline constexpr int kEdgeVerts[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
inline constexpr int kEdgeAngle[6] = {0, 1, 2, 2, 1, 0};  // 0=a, 1=b, 2=c

struct TetRecord {
    int id = 0;
    int sign = +1;
};

struct FaceGluing {
    int tet_a, face_a, tet_b, face_b;
};

struct ShapeAssignment {
    // per tet: (a, b, c)
    std::vector<std::array<Rational, 3>> angles;
};

/// Oriented triangulated pseudo 3-manifold with derived edge classes.
class PseudoManifold {
public:
    std::vector<TetRecord> tets;
    std::vector<FaceGluing> gluings;
    std::string name;
    std::optional<ShapeAssignment> shapes;
    std::optional<std::string> knot_edge;  // label of the knot edge class

    /// slot index = 6*tet + edge (edge in kEdgeVerts order)
    int n_slots() const { return 6 * static_cast<int>(tets.size()); }

    int edge_class_count() const { return static_cast<int>(classes_.size()); }
    const std::vector<std::vector<int>>& edge_classes() const { return classes_; }
    int class_of_slot(int slot) const { return slot_class_[static_cast<size_t>(slot)]; }
    int degree(int cls) const { return static_cast<int>(classes_[static_cast<size_t>(cls)].size()); }

    /// label assigned by the document ("edge_names"), or canonical "e<k>"
    const std::string& class_label(int cls) const { return labels_[static_cast<size_t>(cls)]; }
    std::optional<int> class_by_label(const std::string& label) const;

    const std::vector<std::pair<int, int>>& boundary_faces() const { return boundary_faces_; }
    bool class_is_boundary(int cls) const { return boundary_class_[static_cast<size_t>(cls)]; }

    /// Exact weight row of an edge class over variables (a_0,b_0,c_0,a_1,...).
    RatRow weight_row(int cls) const;

    /// Weight of a class under a shape assignment (balanced value is 1).
    Rational weight(const ShapeAssignment& s, int cls) const;

    void finalize();  // derive classes, labels, boundary data; validates

    std::map<std::string, std::string> requested_labels;  // "tet:ij" -> label

private:
    std::vector<std::vector<int>> classes_;
    std::vector<int> slot_class_;
    std::vector<std::string> labels_;
    std::vector<bool> boundary_class_;
    std::vector<std::pair<int, int>> boundary_faces_;
};

/// Parse the triangulation document format (UTF-8 JSON).
PseudoManifold load_triangulation(const std::string& json_text);
PseudoManifold load_triangulation_file(const std::string& path);

/// Balancing solution: the affine set of shape assignments with every chosen
/// internal edge balanced, plus a strictly positive sample point.
struct BalanceResult {
    RatMat system;       // rows over angle variables (a_0,b_0,c_0,a_1,...)
    RatRow rhs;
    AffineSolution solution;
    ShapeAssignment sample;
    Rational sample_margin;
    std::vector<std::string> dropped_edges;  // balance rows dropped to keep the
                                             // epsilon-family consistent
};

/// Solve {weight(e)=1 for internal e != knot} + {per-tet a+b+c = 1/2}, with
/// weight(knot) = eps when a knot edge is designated. Near the degenerate
/// limit one balance row becomes inconsistent with the knot constraint (the
/// total weight satisfies sum_e w(e) = |tets|); such rows are dropped
/// greedily in label order and reported.
BalanceResult solve_balanced(const PseudoManifold& M,
                             std::optional<Rational> knot_eps = std::nullopt);

/// Balance rows of the manifold reduced modulo the per-tet sum relations
/// (c_i eliminated); for symbolic comparison against printed constraint lists.
RatMat reduced_balance_rowspace(const PseudoManifold& M, bool exclude_knot);

/// Ptolemy flip: e' = (ac + bd)/e.
double ptolemy_flip(double a, double b, double c, double d, double e);

enum class RatioKind { dot, star };

/// Ratio-coordinate composition on R^2_{>0} x R^2_{>0}:
///   dot : (x1 y1, x1 y2 + x2)
///   star: (x2 y1 / (x1 y2 + x2), y2 / (x1 y2 + x2))
std::pair<double, double> ratio_compose(RatioKind kind, std::pair<double, double> x,
                                        std::pair<double, double> y);

}  // namespace tqft
