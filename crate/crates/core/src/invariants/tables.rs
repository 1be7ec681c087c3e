//! Literal coefficient tables of the classical invariants. Each monomial is
//! given by the multiset of its variable indices, so `[1, 1, 2]` is
//! `(theta^1)^2 theta^2`.

pub(crate) type Table = &'static [(i64, &'static [usize])];

/// Quadratic of the three-dimensional representation, `(t1)^2 - t0 t2`.
pub(crate) const G3: Table = &[(1, &[1, 1]), (-1, &[0, 2])];

/// Quartic of the four-dimensional representation.
pub(crate) const I4: Table = &[
    (-3, &[1, 1, 2, 2]),
    (4, &[0, 2, 2, 2]),
    (4, &[1, 1, 1, 3]),
    (-6, &[0, 1, 2, 3]),
    (1, &[0, 0, 3, 3]),
];

/// Sextic of the five-dimensional representation.
pub(crate) const I5: Table = &[
    (-36, &[1, 1, 2, 2, 3, 3]),
    (54, &[0, 2, 2, 2, 3, 3]),
    (64, &[1, 1, 1, 3, 3, 3]),
    (-108, &[0, 1, 2, 3, 3, 3]),
    (27, &[0, 0, 3, 3, 3, 3]),
    (54, &[1, 1, 2, 2, 2, 4]),
    (-81, &[0, 2, 2, 2, 2, 4]),
    (-108, &[1, 1, 1, 2, 3, 4]),
    (180, &[0, 1, 2, 2, 3, 4]),
    (6, &[0, 1, 1, 3, 3, 4]),
    (-54, &[0, 0, 2, 3, 3, 4]),
    (27, &[1, 1, 1, 1, 4, 4]),
    (-54, &[0, 1, 1, 2, 4, 4]),
    (18, &[0, 0, 2, 2, 4, 4]),
    (12, &[0, 0, 1, 3, 4, 4]),
    (-1, &[0, 0, 0, 4, 4, 4]),
];

/// Conformal metric in five dimensions.
pub(crate) const G5: Table = &[(3, &[2, 2]), (-4, &[1, 3]), (1, &[0, 4])];

/// Cubic form in five dimensions without its `3 sqrt(3)` prefactor.
pub(crate) const UPSILON5: Table = &[
    (1, &[0, 2, 4]),
    (2, &[1, 2, 3]),
    (-1, &[2, 2, 2]),
    (-1, &[0, 3, 3]),
    (-1, &[1, 1, 4]),
];

/// The same cubic invariant with the opposite overall sign, as listed among the
/// cubic invariants of dimensions `4k+1`.
pub(crate) const UPSILON5_TILDE: Table = &[
    (1, &[2, 2, 2]),
    (-2, &[1, 2, 3]),
    (1, &[0, 3, 3]),
    (-1, &[0, 2, 4]),
    (1, &[1, 1, 4]),
];

/// Quartic invariant of the four-dimensional representation as a catalog entry.
pub(crate) const UPSILON4: Table = &[
    (-3, &[1, 1, 2, 2]),
    (4, &[0, 2, 2, 2]),
    (4, &[1, 1, 1, 3]),
    (-6, &[0, 1, 2, 3]),
    (1, &[0, 0, 3, 3]),
];

pub(crate) const UPSILON6: Table = &[
    (-32, &[2, 2, 3, 3]),
    (48, &[1, 3, 3, 3]),
    (48, &[2, 2, 2, 4]),
    (-76, &[1, 2, 3, 4]),
    (-12, &[0, 3, 3, 4]),
    (9, &[1, 1, 4, 4]),
    (16, &[0, 2, 4, 4]),
    (-12, &[1, 2, 2, 5]),
    (16, &[1, 1, 3, 5]),
    (4, &[0, 2, 3, 5]),
    (-10, &[0, 1, 4, 5]),
    (1, &[0, 0, 5, 5]),
];

pub(crate) const G7: Table = &[(-10, &[3, 3]), (15, &[2, 4]), (-6, &[1, 5]), (1, &[0, 6])];

pub(crate) const UPSILON7: Table = &[
    (160, &[3, 3, 3, 3]),
    (-480, &[2, 3, 3, 4]),
    (1035, &[2, 2, 4, 4]),
    (-1080, &[1, 3, 4, 4]),
    (540, &[0, 4, 4, 4]),
    (-1080, &[2, 2, 3, 5]),
    (1920, &[1, 3, 3, 5]),
    (-180, &[1, 2, 4, 5]),
    (-1080, &[0, 3, 4, 5]),
    (-288, &[1, 1, 5, 5]),
    (540, &[0, 2, 5, 5]),
    (540, &[2, 2, 2, 6]),
    (-1080, &[1, 2, 3, 6]),
    (400, &[0, 3, 3, 6]),
    (540, &[1, 1, 4, 6]),
    (-330, &[0, 2, 4, 6]),
    (-84, &[0, 1, 5, 6]),
    (7, &[0, 0, 6, 6]),
];

pub(crate) const UPSILON8: Table = &[
    (-375, &[3, 3, 4, 4]),
    (600, &[2, 4, 4, 4]),
    (600, &[3, 3, 3, 5]),
    (-990, &[2, 3, 4, 5]),
    (-240, &[1, 4, 4, 5]),
    (81, &[2, 2, 5, 5]),
    (360, &[1, 3, 5, 5]),
    (-240, &[2, 3, 3, 6]),
    (360, &[2, 2, 4, 6]),
    (50, &[1, 3, 4, 6]),
    (40, &[0, 4, 4, 6]),
    (-234, &[1, 2, 5, 6]),
    (-60, &[0, 3, 5, 6]),
    (25, &[1, 1, 6, 6]),
    (24, &[0, 2, 6, 6]),
    (40, &[1, 3, 3, 7]),
    (-60, &[1, 2, 4, 7]),
    (-10, &[0, 3, 4, 7]),
    (24, &[1, 1, 5, 7]),
    (18, &[0, 2, 5, 7]),
    (-14, &[0, 1, 6, 7]),
    (1, &[0, 0, 7, 7]),
];

pub(crate) const G9: Table = &[(35, &[4, 4]), (-56, &[3, 5]), (28, &[2, 6]), (-8, &[1, 7]), (1, &[0, 8])];

pub(crate) const UPSILON9: Table = &[
    (15, &[4, 4, 4]),
    (-36, &[3, 4, 5]),
    (24, &[2, 5, 5]),
    (24, &[3, 3, 6]),
    (-22, &[2, 4, 6]),
    (-8, &[1, 5, 6]),
    (3, &[0, 6, 6]),
    (-8, &[2, 3, 7]),
    (12, &[1, 4, 7]),
    (-4, &[0, 5, 7]),
    (3, &[2, 2, 8]),
    (-4, &[1, 3, 8]),
    (1, &[0, 4, 8]),
];
