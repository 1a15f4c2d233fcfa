#pragma once

#include <string>
#include <variant>
#include <vector>

#include "webq/braid.hpp"
#include "webq/laurent.hpp"
#include "webq/operator_q.hpp"

namespace webq {

/// One column of a web-braid diagram: either a crossing between strands
/// pos, pos+1 or a labeled rung moving `label` units of color between them.
/// MoveRight sends color from strand pos to pos+1, MoveLeft the reverse.
enum class RungDir { MoveRight, MoveLeft };

struct RungCol {
    int pos;  // 1-based, acts on strands pos, pos+1
    RungDir dir;
    int label;
    bool operator==(const RungCol& o) const {
        return pos == o.pos && dir == o.dir && label == o.label;
    }
};

struct CrossCol {
    int pos;
    int sign;
    bool operator==(const CrossCol& o) const { return pos == o.pos && sign == o.sign; }
};

using WebColumn = std::variant<RungCol, CrossCol>;

/// Web-braid diagram: top coloring plus a column list, read top to bottom.
/// Strand labels between columns are determined by the top coloring; a
/// diagram forcing a label outside [0, N] is the zero web.
struct LadderWeb {
    int n = 0;
    std::vector<int> top;
    std::vector<WebColumn> cols;

    static LadderWeb identityWeb(const std::vector<int>& top);
    static LadderWeb fromWord(const BraidWord& b, const std::vector<int>& top);

    bool isIdentityDiagram() const;
    /// Colorings before/after each column (cols.size()+1 entries); labels may
    /// leave [0, N] — the operator layer maps such webs to zero.
    std::vector<std::vector<int>> colorings() const;
    std::vector<int> bottom() const { return colorings().back(); }
    bool operator==(const LadderWeb& o) const {
        return n == o.n && top == o.top && cols == o.cols;
    }
};

/// Sum over crossing columns of min(two incident colors), each with the
/// diagram's own running coloring.
long minColorSumWeb(const LadderWeb& w);

/// Homological shift between two web-braid diagrams related by rung slides,
/// rung twists and braid-like moves.
long slideShift(const LadderWeb& before, const LadderWeb& after);

// --- primitive web operators --------------------------------------------

/// Lambda^{a+b} -> Lambda^a (x) Lambda^b at `pos` in the gamma context.
OperatorQ splitOp(int a, int b, int pos, const std::vector<int>& gamma, int N);

/// Lambda^a (x) Lambda^b -> Lambda^{a+b} at `pos` in the gamma context.
OperatorQ mergeOp(int a, int b, int pos, const std::vector<int>& gamma, int N);

/// Divided-power rung, realized as a split and a merge through the
/// Lambda^{label} edge; identity when label = 0.
OperatorQ rungOp(const RungCol& rung, const std::vector<int>& gamma, int N);

/// Alternating q-weighted sum of the ladder resolutions of one crossing.
OperatorQ crossingEulerOp(int pos, int sign, const std::vector<int>& gamma, int N);

/// Column-by-column operator of a web-braid diagram; zero web gives zero.
OperatorQ webOp(const LadderWeb& w, int N);

/// Product of crossing operators along a colored braid word.
OperatorQ braidEulerOp(const BraidWord& b, const Coloring& gamma, int N);
OperatorQ braidEulerOp(const BraidWord& b, const Coloring& gamma, int N, uint64_t dimLimit);

/// The ladder resolutions of a crossing with top colors (a, b): term k has
/// a first rung of label |a-b|+k and a second rung of label k sending color
/// back; k runs from 0 to min(a, b).
std::vector<RungCol> crossingLadderTerm(int pos, int a, int b, int k);

struct WebRelationReport {
    std::string relation;
    std::vector<long> params;
    OperatorQ lhs, rhs;
    bool equal;
};

WebRelationReport checkDigon(int i, int j, int N);
WebRelationReport checkSquareSwitch(int i, int j, int k, int ell, int N);

}  // namespace webq
