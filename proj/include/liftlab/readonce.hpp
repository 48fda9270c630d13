#pragma once

#include <memory>
#include <string>
#include <vector>

#include "liftlab/boolfn.hpp"

namespace liftlab {

/// AND/OR tree over distinct variables with negation recorded as leaf
/// polarity. Sign convention of the induced function: +1 when the formula
/// evaluates to 0 (false), -1 when it evaluates to 1 (true).
class ReadOnceFormula {
  public:
    enum class Kind { leaf, and_gate, or_gate };

    struct Node {
        Kind kind = Kind::leaf;
        int var = 0;          // leaf only
        bool negated = false; // leaf only
        std::vector<Node> children;
    };

    /// Prefix notation: "AND(x1,OR(x2,NOT(x3)))". NOT over a subtree is
    /// pushed to the leaves by De Morgan.
    static ReadOnceFormula parse(const std::string& text);

    static ReadOnceFormula from_node(Node root);

    const Node& root() const { return root_; }
    const CoordSet& variables() const { return vars_; }
    int num_variables() const { return vars_.size(); }

    /// Boolean evaluation; bit t of `point` is the t-th variable in label
    /// order.
    bool eval(std::uint32_t point) const;

    /// The +-1 truth table on the variable set.
    BooleanFunction to_function() const;

    std::string to_string() const;

  private:
    ReadOnceFormula(Node root, CoordSet vars) : root_(std::move(root)), vars_(std::move(vars)) {}

    Node root_;
    CoordSet vars_;
};

/// Computes the polynomial degree of the formula's truth table and verifies
/// that it equals the number of variables (full degree), which holds for
/// every read-once formula. Guarded to n <= 4.
int readonce_degree(const ReadOnceFormula& formula);

/// Every read-once formula over exactly the variables {1..n} (set-partition
/// tree shapes, both gate types, both leaf polarities). Used by the
/// exhaustive degree checks.
std::vector<ReadOnceFormula> enumerate_read_once(int n);

}  // namespace liftlab
