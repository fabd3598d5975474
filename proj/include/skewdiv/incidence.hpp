#pragma once

#include "skewdiv/geometry.hpp"
#include "skewdiv/int_matrix.hpp"
#include "skewdiv/report.hpp"

namespace skewdiv {

enum class IncidenceKind {
    Skew,                 // entry(x, y) = 1 iff x ∩ y = {0}
    HyperplaneComplement, // entry(x, y) = 1 iff y is not contained in x (rows are hyperplanes)
};

struct IncidenceSpec {
    Prime p;
    int n = 4;
    int r = 2;
    int s = 2;
    IncidenceKind kind = IncidenceKind::Skew;

    void validate() const;
};

struct IncidenceBuildOptions {
    EnumerationOptions guard;
    int threads = 1;
};

/// The skew-incidence matrix: rows indexed by L_r, columns by L_s, both in
/// canonical order; entry(x, y) = 1 iff x ∩ y = {0}.
IntMatrix build_eta(const IncidenceSpec& spec, const IncidenceBuildOptions& opt = {});

/// Rows indexed by L_3 of F_p^4, columns by L_2; entry(x, y) = 1 iff the line
/// y does not lie inside the hyperplane x.
IntMatrix build_psi(const Prime& p, const IncidenceBuildOptions& opt = {});

IntMatrix all_ones(int rows, int cols);

/// True iff A^2 + (p^2-p)A - p^3 I - (p^4-p^3) J is exactly the zero matrix.
/// A must be square of size |L_2| for this p.
bool verify_matrix_identity(const IntMatrix& a, const Prime& p);

/// The three point/line/hyperplane families of F_p^4 and the incidence
/// matrices between them, built once and shared across checks.
struct IncidenceBundle {
    SubspaceFamily points;       // L_1
    SubspaceFamily lines;        // L_2
    SubspaceFamily hyperplanes;  // L_3
    IntMatrix eta22;             // |L_2| x |L_2| skew incidence
    IntMatrix phi;               // |L_1| x |L_2|, entry = 1 iff point skew line
    IntMatrix psi;               // |L_3| x |L_2|, entry = 1 iff line not in hyperplane
};

IncidenceBundle build_bundle(const Prime& p, const IncidenceBuildOptions& opt = {});

/// Entrywise checks of the composite products:
///  - A*A against the three-case count (p^4 / p^4-p^3-p^2+p / p^4-p^3),
///  - A*phi^T against the two-case count (p^4 on the line, p^4-p^2 off it),
///  - A*psi^T ≡ 0 mod p^2,
///  - A*(A + (p^2-p)I) ≡ 0 mod p^3,
///  - A*1 = p^4*1.
VerificationReport verify_counting_lemmas(const IncidenceBundle& b);
VerificationReport verify_counting_lemmas(const Prime& p, const IncidenceBuildOptions& opt = {});

} // namespace skewdiv
