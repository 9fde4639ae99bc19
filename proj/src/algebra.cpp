#include "triemit/algebra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace triemit {

namespace {

constexpr int kDim3 = 8;

void check_label(int alpha) {
    if (alpha < 1 || alpha > kDim3) {
        throw std::invalid_argument("collective state label out of range");
    }
}

// One term of a printed operator decomposition: coeff * |alpha><beta|.
struct RTerm {
    int alpha;
    int beta;
    double coeff;
};

Eigen::MatrixXcd assemble(const std::vector<RTerm>& terms) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(kDim3, kDim3);
    for (const auto& t : terms) {
        op(t.alpha - 1, t.beta - 1) += t.coeff;
    }
    return op;
}

// Printed collective decompositions of S+_1, S+_2, S+_3 (transcription
// fixtures for collective_decomposition_check).
const std::vector<RTerm>& printed_splus(int j) {
    static const double s2 = std::sqrt(2.0);
    static const double s3 = std::sqrt(3.0);
    static const double s6 = std::sqrt(6.0);
    static const double s18 = std::sqrt(18.0);
    static const std::vector<RTerm> sp1{
        {4, 1, 1.0 / s2},  {8, 7, 1.0 / s2},
        {2, 1, 1.0 / s3},  {6, 4, -1.0 / s3}, {7, 3, -1.0 / s3}, {8, 5, 1.0 / s3},
        {3, 1, -1.0 / s6}, {5, 4, -1.0 / s6}, {7, 2, -1.0 / s6}, {8, 6, -1.0 / s6},
        {5, 3, 1.0 / s18}, {6, 2, 1.0 / s18},
        {5, 2, 2.0 / 3.0}, {6, 3, -2.0 / 3.0},
    };
    static const std::vector<RTerm> sp2{
        {3, 1, std::sqrt(2.0 / 3.0)}, {8, 6, std::sqrt(2.0 / 3.0)},
        {2, 1, 1.0 / s3},             {8, 5, 1.0 / s3},
        {6, 2, -s2 / 3.0},            {5, 3, -s2 / 3.0},
        {6, 3, 1.0 / 3.0},            {5, 2, 2.0 / 3.0},
        {7, 4, -1.0},
    };
    static const std::vector<RTerm> sp3{
        {4, 1, -1.0 / s2}, {8, 7, -1.0 / s2},
        {2, 1, 1.0 / s3},  {6, 4, 1.0 / s3},  {7, 3, 1.0 / s3},  {8, 5, 1.0 / s3},
        {5, 4, 1.0 / s6},  {7, 2, 1.0 / s6},  {3, 1, -1.0 / s6}, {8, 6, -1.0 / s6},
        {5, 3, 1.0 / s18}, {6, 2, 1.0 / s18},
        {5, 2, 2.0 / 3.0}, {6, 3, -2.0 / 3.0},
    };
    switch (j) {
        case 1: return sp1;
        case 2: return sp2;
        case 3: return sp3;
        default: throw std::invalid_argument("emitter index out of range");
    }
}

} // namespace

Eigen::MatrixXcd ladder(int n_emitters, int j, Ladder kind) {
    if (n_emitters < 1 || n_emitters > 16) {
        throw std::invalid_argument("emitter count out of range");
    }
    if (j < 1 || j > n_emitters) {
        throw std::invalid_argument("emitter index out of range");
    }
    const int dim = 1 << n_emitters;
    const int bit = 1 << (j - 1);
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
    for (int b = 0; b < dim; ++b) {
        const bool excited = (b & bit) != 0;
        switch (kind) {
            case Ladder::Raise:
                if (!excited) op(b | bit, b) = 1.0;
                break;
            case Ladder::Lower:
                if (excited) op(b & ~bit, b) = 1.0;
                break;
            case Ladder::Inversion:
                op(b, b) = excited ? 0.5 : -0.5;
                break;
        }
    }
    return op;
}

Eigen::MatrixXcd excitation_number(int n_emitters) {
    const int dim = 1 << n_emitters;
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
    for (int b = 0; b < dim; ++b) {
        op(b, b) = static_cast<double>(std::popcount(static_cast<unsigned>(b)));
    }
    return op;
}

CollectiveBasis dicke_basis() {
    const double s2 = 1.0 / std::sqrt(2.0);
    const double s3 = 1.0 / std::sqrt(3.0);
    const double s6 = 1.0 / std::sqrt(6.0);

    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(kDim3, kDim3);
    // Bare indices: emitter j excited <=> bit (j-1) set.
    // |1> = |g g g>
    u(0, 0) = 1.0;
    // |2> = (|e g g> + |g e g> + |g g e>)/sqrt(3)
    u(1, 1) = s3; u(1, 2) = s3; u(1, 4) = s3;
    // |3> = (-|e g g> + 2|g e g> - |g g e>)/sqrt(6)
    u(2, 1) = -s6; u(2, 2) = 2.0 * s6; u(2, 4) = -s6;
    // |4> = (|e g g> - |g g e>)/sqrt(2)
    u(3, 1) = s2; u(3, 4) = -s2;
    // |5> = (|g e e> + |e g e> + |e e g>)/sqrt(3)
    u(4, 6) = s3; u(4, 5) = s3; u(4, 3) = s3;
    // |6> = (-|g e e> + 2|e g e> - |e e g>)/sqrt(6)
    u(5, 6) = -s6; u(5, 5) = 2.0 * s6; u(5, 3) = -s6;
    // |7> = (|g e e> - |e e g>)/sqrt(2)
    u(6, 6) = s2; u(6, 3) = -s2;
    // |8> = |e e e>
    u(7, 7) = 1.0;

    return CollectiveBasis{u};
}

Eigen::MatrixXcd CollectiveBasis::to_collective(const Eigen::MatrixXcd& bare_op) const {
    return transform * bare_op * transform.adjoint();
}

Eigen::MatrixXcd CollectiveBasis::to_bare(const Eigen::MatrixXcd& collective_op) const {
    return transform.adjoint() * collective_op * transform;
}

Eigen::MatrixXcd CollectiveBasis::projector_bare(int alpha, int beta) const {
    check_label(alpha);
    check_label(beta);
    return transform.row(alpha - 1).adjoint() * transform.row(beta - 1);
}

Eigen::MatrixXcd collective_projector(int alpha, int beta) {
    check_label(alpha);
    check_label(beta);
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(kDim3, kDim3);
    op(alpha - 1, beta - 1) = 1.0;
    return op;
}

double collective_decomposition_check() {
    const CollectiveBasis basis = dicke_basis();
    double worst = 0.0;
    for (int j = 1; j <= 3; ++j) {
        const Eigen::MatrixXcd constructed =
            basis.to_collective(ladder(3, j, Ladder::Raise));
        const Eigen::MatrixXcd printed = assemble(printed_splus(j));
        worst = std::max(worst,
                         (constructed - printed).cwiseAbs().maxCoeff());
        // Hermitian-conjugate consistency for the lowering partner.
        const Eigen::MatrixXcd lowered =
            basis.to_collective(ladder(3, j, Ladder::Lower));
        worst = std::max(worst,
                         (lowered - printed.adjoint()).cwiseAbs().maxCoeff());
    }
    return worst;
}

Eigen::MatrixXcd dipole_shift_hamiltonian(double delta) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(kDim3, kDim3);
    h(1, 1) = -2.0 * delta; // |2>
    h(4, 4) = -2.0 * delta; // |5>
    h(2, 2) = delta;        // |3>
    h(3, 3) = delta;        // |4>
    h(5, 5) = delta;        // |6>
    h(6, 6) = delta;        // |7>
    return h;
}

Eigen::MatrixXcd hamiltonian(double omega0, double delta) {
    Eigen::MatrixXcd h = dipole_shift_hamiltonian(delta);
    h(1, 1) += omega0;
    h(2, 2) += omega0;
    h(3, 3) += omega0;
    h(4, 4) += 2.0 * omega0;
    h(5, 5) += 2.0 * omega0;
    h(6, 6) += 2.0 * omega0;
    h(7, 7) += 3.0 * omega0;
    return h;
}

std::array<JumpOperatorPair, 3> symmetric_jump_operators() {
    const double s2 = std::sqrt(2.0);
    const double s3 = std::sqrt(3.0);
    const double s6 = std::sqrt(6.0);

    const Eigen::MatrixXcd r1 = assemble({
        {2, 1, 1.0 / s3}, {8, 5, 1.0 / s3}, {5, 2, 2.0 / 3.0},
        {7, 4, -1.0 / 3.0}, {6, 3, -1.0 / 3.0},
    });
    const Eigen::MatrixXcd r2 = assemble({
        {4, 1, 1.0 / s2}, {8, 7, 1.0 / s2},
        {7, 3, -1.0 / s3}, {6, 4, -1.0 / s3},
        {7, 2, -1.0 / s6}, {5, 4, -1.0 / s6},
    });
    const Eigen::MatrixXcd r3 = assemble({
        {6, 2, 1.0 / (3.0 * s2)}, {5, 3, 1.0 / (3.0 * s2)},
        {3, 1, -1.0 / s6}, {8, 6, -1.0 / s6},
        {7, 4, 1.0 / 3.0}, {6, 3, -1.0 / 3.0},
    });

    return {JumpOperatorPair{r1, r1.adjoint()},
            JumpOperatorPair{r2, r2.adjoint()},
            JumpOperatorPair{r3, r3.adjoint()}};
}

} // namespace triemit
