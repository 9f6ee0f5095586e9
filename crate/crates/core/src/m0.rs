//! The six-component surgery example: three `+3`-framed and three
//! `-3`-framed components, giving `H_1 = (Z/3)^6`.

use crate::intmatrix::IntMatrix;
use crate::isotropic::Subspace;
use crate::linking::{linking_form_from_framing, LinkingForm, SignConvention};
use crate::tripleform::ObstructionVector;

pub fn framing() -> IntMatrix {
    IntMatrix::diagonal(&[3, 3, 3, -3, -3, -3])
}

/// Diagonal form `1/3, 1/3, 1/3, -1/3, -1/3, -1/3`.
pub fn form() -> LinkingForm {
    linking_form_from_framing(&framing(), SignConvention::Paper)
        .expect("fixed nonsingular symmetric framing")
        .1
}

/// Span of `x1 + x2`, `y1 + y2`, `z1 + z2`: the basis `[I | I]`.
pub fn diagonal_lagrangian() -> Subspace {
    Subspace::span(
        3,
        6,
        &[
            vec![1i64, 0, 0, 1, 0, 0],
            vec![0, 1, 0, 0, 1, 0],
            vec![0, 0, 1, 0, 0, 1],
        ],
    )
    .expect("valid rows")
}

/// Row matrices of the complementary Lagrangians on which the `e_1` form
/// vanishes.
pub const VANISHING_PAIR_ROWS: ([[i64; 6]; 3], [[i64; 6]; 3]) = (
    [[0, 0, 0, 1, 1, 1], [0, 1, -1, 0, 1, -1], [1, 1, 1, 0, 0, 0]],
    [
        [0, 0, 0, -1, 1, 1],
        [0, 1, -1, 0, -1, 1],
        [-1, 1, 1, 0, 0, 0],
    ],
);

pub fn vanishing_pair() -> (Subspace, Subspace) {
    let span = |rows: &[[i64; 6]; 3]| {
        Subspace::span(3, 6, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .expect("valid rows")
    };
    (span(&VANISHING_PAIR_ROWS.0), span(&VANISHING_PAIR_ROWS.1))
}

/// A coefficient vector whose determinant form is nonzero on some member of
/// every dual pair.
pub const WITNESS: [i64; 20] = [
    -1, -1, 1, 1, 0, 0, 0, 0, 0, 0, -1, -1, -1, 1, 1, 0, 0, 0, 0, 0,
];

pub fn witness() -> ObstructionVector {
    ObstructionVector::from_ints(&WITNESS).expect("20 entries")
}
