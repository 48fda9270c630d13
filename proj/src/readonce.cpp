#include "liftlab/readonce.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "liftlab/errors.hpp"
#include "liftlab/guard.hpp"

namespace liftlab {

namespace {

using Node = ReadOnceFormula::Node;
using Kind = ReadOnceFormula::Kind;

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c))
            throw ParseError("read-once formula: expected '" + std::string(1, c) +
                             "' at position " + std::to_string(pos));
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (start == pos)
            throw ParseError("read-once formula: expected a token at position " +
                             std::to_string(pos));
        return text.substr(start, pos - start);
    }

    Node parse_node() {
        std::string tok = ident();
        std::string upper = tok;
        std::transform(upper.begin(), upper.end(), upper.begin(),
                       [](unsigned char c) { return std::toupper(c); });
        if (upper == "AND" || upper == "OR") {
            Node n;
            n.kind = upper == "AND" ? Kind::and_gate : Kind::or_gate;
            expect('(');
            n.children.push_back(parse_node());
            while (eat(',')) n.children.push_back(parse_node());
            expect(')');
            if (n.children.size() < 2)
                throw ParseError("read-once formula: gates need at least two arguments");
            return n;
        }
        if (upper == "NOT") {
            expect('(');
            Node inner = parse_node();
            expect(')');
            return negate(inner);
        }
        if (tok.size() >= 2 && (tok[0] == 'x' || tok[0] == 'X') &&
            std::all_of(tok.begin() + 1, tok.end(),
                        [](unsigned char c) { return std::isdigit(c); })) {
            Node n;
            n.kind = Kind::leaf;
            try {
                n.var = std::stoi(tok.substr(1));
            } catch (...) {
                throw ParseError("read-once formula: variable index out of range");
            }
            if (n.var < 1) throw ParseError("read-once formula: variable index must be >= 1");
            return n;
        }
        throw ParseError("read-once formula: unexpected token '" + tok + "'");
    }

    static Node negate(Node n) {
        if (n.kind == Kind::leaf) {
            n.negated = !n.negated;
            return n;
        }
        n.kind = n.kind == Kind::and_gate ? Kind::or_gate : Kind::and_gate;
        for (Node& ch : n.children) ch = negate(std::move(ch));
        return n;
    }
};

void collect_vars(const Node& n, std::vector<int>& vars) {
    if (n.kind == Kind::leaf) {
        vars.push_back(n.var);
        return;
    }
    for (const Node& ch : n.children) collect_vars(ch, vars);
}

bool eval_node(const Node& n, const CoordSet& vars, std::uint32_t point) {
    if (n.kind == Kind::leaf) {
        bool bit = point >> vars.position(n.var) & 1u;
        return bit != n.negated;
    }
    if (n.kind == Kind::and_gate) {
        for (const Node& ch : n.children)
            if (!eval_node(ch, vars, point)) return false;
        return true;
    }
    for (const Node& ch : n.children)
        if (eval_node(ch, vars, point)) return true;
    return false;
}

std::string node_string(const Node& n) {
    if (n.kind == Kind::leaf)
        return (n.negated ? "NOT(x" : "x") + std::to_string(n.var) + (n.negated ? ")" : "");
    std::string s = n.kind == Kind::and_gate ? "AND(" : "OR(";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) s += ",";
        s += node_string(n.children[i]);
    }
    return s + ")";
}

}  // namespace

ReadOnceFormula ReadOnceFormula::parse(const std::string& text) {
    Parser p(text);
    Node root = p.parse_node();
    p.skip_ws();
    if (p.pos != text.size())
        throw ParseError("read-once formula: trailing input at position " +
                         std::to_string(p.pos));
    return from_node(std::move(root));
}

ReadOnceFormula ReadOnceFormula::from_node(Node root) {
    std::vector<int> vars;
    collect_vars(root, vars);
    std::vector<int> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ParseError("read-once formula: a variable appears more than once");
    return ReadOnceFormula(std::move(root), CoordSet(std::move(sorted)));
}

bool ReadOnceFormula::eval(std::uint32_t point) const {
    return eval_node(root_, vars_, point);
}

BooleanFunction ReadOnceFormula::to_function() const {
    return BooleanFunction::from_evaluator(
        vars_, [&](std::uint32_t x) { return eval(x) ? -1.0 : 1.0; });
}

std::string ReadOnceFormula::to_string() const { return node_string(root_); }

int readonce_degree(const ReadOnceFormula& formula) {
    if (formula.num_variables() > 4)
        throw GuardError("readonce_degree: formulas over more than 4 variables");
    int d = degree(formula.to_function());
    if (d != formula.num_variables())
        throw std::logic_error("readonce_degree: degree " + std::to_string(d) +
                               " != variable count for " + formula.to_string());
    return d;
}

namespace {

// Set partitions of `items` into at least two blocks.
void set_partitions(const std::vector<int>& items,
                    std::vector<std::vector<std::vector<int>>>& out) {
    std::vector<std::vector<int>> current;
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == items.size()) {
            if (current.size() >= 2) out.push_back(current);
            return;
        }
        const std::size_t blocks_here = current.size();  // recursion grows current
        for (std::size_t bi = 0; bi < blocks_here; ++bi) {
            current[bi].push_back(items[idx]);
            rec(idx + 1);
            current[bi].pop_back();
        }
        current.push_back({items[idx]});
        rec(idx + 1);
        current.pop_back();
    };
    rec(0);
}

// All read-once trees over exactly `vars`; `top_gate` restricts the root
// gate so that nested same-gate duplicates are still produced only once per
// distinct tree.
std::vector<Node> trees_over(const std::vector<int>& vars) {
    std::vector<Node> out;
    if (vars.size() == 1) {
        for (bool neg : {false, true}) {
            Node leaf;
            leaf.kind = Kind::leaf;
            leaf.var = vars[0];
            leaf.negated = neg;
            out.push_back(leaf);
        }
        return out;
    }
    std::vector<std::vector<std::vector<int>>> partitions;
    set_partitions(vars, partitions);
    for (const auto& part : partitions) {
        // Subtrees per block, then the cartesian product of the choices.
        std::vector<std::vector<Node>> choices;
        for (const auto& block : part) choices.push_back(trees_over(block));
        std::vector<std::size_t> idx(choices.size(), 0);
        while (true) {
            for (Kind kind : {Kind::and_gate, Kind::or_gate}) {
                Node gate;
                gate.kind = kind;
                for (std::size_t i = 0; i < choices.size(); ++i)
                    gate.children.push_back(choices[i][idx[i]]);
                out.push_back(std::move(gate));
            }
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
    }
    return out;
}

}  // namespace

std::vector<ReadOnceFormula> enumerate_read_once(int n) {
    if (n < 1 || n > 4) throw GuardError("enumerate_read_once: n must be in [1,4]");
    std::vector<int> vars;
    for (int i = 1; i <= n; ++i) vars.push_back(i);
    std::vector<ReadOnceFormula> out;
    for (Node& node : trees_over(vars)) out.push_back(ReadOnceFormula::from_node(std::move(node)));
    return out;
}

}  // namespace liftlab
