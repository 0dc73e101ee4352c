// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "partsim/errors.hpp"

namespace partsim {

// Adaptive Gauss-Kronrod (G7, K15) on a finite interval. Nodes are interior,
// so integrable endpoint singularities (log blow-ups) are never evaluated
// at the endpoint itself; bisection handles the rest.
namespace gk {

// K15 nodes/weights on [-1,1]; the embedded G7 uses the odd-index nodes.
inline constexpr double kNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
inline constexpr double kWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
inline constexpr double gWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct Piece {
    double a, b, integral, error;
};

inline Piece eval(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double k15 = 0, g7 = 0;
    for (int i = 0; i < 15; ++i) {
        const double v = f(c + h * kNodes[i]);
        k15 += kWeights[i] * v;
        if (i % 2 == 1) g7 += gWeights[i / 2] * v;
    }
    k15 *= h;
    g7 *= h;
    const double err = std::pow(200.0 * std::fabs(k15 - g7), 1.5);
    return {a, b, k15, std::min(err, std::fabs(k15 - g7) * 200.0)};
}

}  // namespace gk

// Integrate f over [a, b] to absolute tolerance tol.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_pieces = 4000) {
    if (!(b > a)) return 0.0;
    std::vector<gk::Piece> pieces{gk::eval(f, a, b)};
    for (int iter = 0; iter < max_pieces; ++iter) {
        double total_err = 0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            total_err += pieces[i].error;
            if (pieces[i].error > pieces[worst].error) worst = i;
        }
        if (total_err <= tol) break;
        const gk::Piece p = pieces[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b))
            throw NumericsError("integrate: interval underflow before reaching tolerance");
        pieces[worst] = gk::eval(f, p.a, mid);
        pieces.push_back(gk::eval(f, mid, p.b));
    }
    double sum = 0;
    for (const auto& p : pieces) sum += p.integral;
    return sum;
}

}  // namespace partsim
