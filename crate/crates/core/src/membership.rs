//! The amplituhedron map, the two-sign-flip membership test, and exact
//! positroid-cell witnesses for boundary strata.
//!
//! Closed membership in the amplituhedron is a semialgebraic projection and is
//! not decided here. The verdict carries certificates instead: a strict member
//! of the open part, a proof of non-membership (opposite strict signs, or a
//! flip-count violation away from all zero loci), or an honest
//! "inconclusive boundary".

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{pluecker_from_matrix, Pluecker};
use crate::matrix::QMatrix;
use crate::rat::Rat;
use crate::zinput::ZMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Neg,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "+")]
    Pos,
}

impl Sign {
    pub fn of(r: &Rat) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    StrictMember,
    OppositeSignCertificate,
    FlipViolation,
    InconclusiveBoundary,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub in_open_part: bool,
    pub cyclic_signs: Vec<Sign>,
    pub flip_count: usize,
    pub certificate: Certificate,
}

/// Number of sign alternations in the subsequence of nonzero entries.
pub fn sign_flip_count(values: &[Rat]) -> usize {
    let mut flips = 0;
    let mut last: Option<bool> = None;
    for v in values {
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(prev) = last {
            if prev != pos {
                flips += 1;
            }
        }
        last = Some(pos);
    }
    flips
}

/// X . Z followed by the Plücker embedding.
pub fn amplituhedron_map(x: &QMatrix, z: &ZMatrix) -> Result<Pluecker> {
    if x.rows() != 2 || x.cols() != z.n() {
        return Err(Error::Dimension(format!(
            "expected 2x{} matrix, got {}x{}",
            z.n(),
            x.rows(),
            x.cols()
        )));
    }
    pluecker_from_matrix(&x.mul(z.matrix())?)
}

/// Decide membership in the open amplituhedron and attach a certificate.
/// Brackets are reported with the first nonzero cyclic bracket normalized
/// positive.
pub fn membership_open(ab: &Pluecker, z: &ZMatrix) -> MembershipVerdict {
    let mut cyc = z.cyclic_brackets(ab);
    let mut flip_seq = z.flip_sequence(ab);
    if let Some(first) = cyc.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for v in cyc.iter_mut() {
                *v = -v.clone();
            }
            for v in flip_seq.iter_mut() {
                *v = -v.clone();
            }
        }
    }
    let cyclic_signs: Vec<Sign> = cyc.iter().map(Sign::of).collect();
    let flip_count = sign_flip_count(&flip_seq);
    let any_cyc_zero = cyc.iter().any(|v| v.is_zero());
    // after normalization a strict negative certifies opposite strict signs
    let opposite = cyc.iter().any(|v| v.is_negative());
    let in_open_part = !any_cyc_zero && !opposite && flip_count == 2;
    let certificate = if in_open_part {
        Certificate::StrictMember
    } else if opposite {
        Certificate::OppositeSignCertificate
    } else if !flip_seq.iter().any(|v| v.is_zero()) && flip_count != 2 {
        Certificate::FlipViolation
    } else {
        Certificate::InconclusiveBoundary
    };
    MembershipVerdict { in_open_part, cyclic_signs, flip_count, certificate }
}

/// Which positroid-cell family a sample was drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellTag {
    Interior,
    Facet(usize),
    PlaneI(usize),
    PlaneII(usize),
    QuadricIII(usize, usize),
    LineI(usize),
    LineII(usize, usize),
}

#[derive(Debug, Clone)]
pub struct CellSample {
    pub x: QMatrix,
    pub tag: CellTag,
    pub params: Vec<Rat>,
}

impl CellSample {
    /// Cyclic edge indices whose bracket vanishes on the image by construction.
    pub fn expected_vanishing(&self, n: usize) -> Vec<usize> {
        let cyc = |i: i64| ((i - 1).rem_euclid(n as i64)) as usize + 1;
        let mut v = match self.tag {
            CellTag::Interior => vec![],
            CellTag::Facet(i) => vec![cyc(i as i64)],
            CellTag::PlaneI(i) | CellTag::PlaneII(i) | CellTag::LineI(i) => {
                vec![cyc(i as i64 - 1), cyc(i as i64)]
            }
            CellTag::QuadricIII(i, j) => vec![cyc(i as i64), cyc(j as i64)],
            CellTag::LineII(i, j) => vec![cyc(i as i64 - 1), cyc(i as i64), cyc(j as i64)],
        };
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Circular column shift with a sign twist on the new first column; this is
/// the cyclic symmetry of the nonnegative Grassmannian.
pub fn sigma_shift(x: &QMatrix) -> QMatrix {
    let n = x.cols();
    let mut out = QMatrix::zeros(2, n);
    for r in 0..2 {
        out[(r, 0)] = -x[(r, n - 1)].clone();
        for c in 1..n {
            out[(r, c)] = x[(r, c - 1)].clone();
        }
    }
    out
}

fn sigma_pow(x: &QMatrix, k: usize) -> QMatrix {
    let mut out = x.clone();
    for _ in 0..k {
        out = sigma_shift(&out);
    }
    out
}

/// All 2x2 minors of a 2xn matrix, position pairs in lexicographic order.
pub fn minors_2xn(x: &QMatrix) -> Vec<(usize, usize, Rat)> {
    let n = x.cols();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            let d = &x[(0, a)] * &x[(1, b)] - &x[(0, b)] * &x[(1, a)];
            out.push((a + 1, b + 1, d));
        }
    }
    out
}

pub fn is_totally_nonnegative_2xn(x: &QMatrix) -> bool {
    x.rows() == 2 && minors_2xn(x).iter().all(|(_, _, d)| !d.is_negative())
}

fn unit_row(n: usize, entries: &[(usize, Rat)]) -> Vec<Rat> {
    let mut row = vec![Rat::zero(); n];
    for (col, v) in entries {
        row[col - 1] = v.clone();
    }
    row
}

/// Build the exact witness matrix of the named positroid-cell family.
pub fn cell_sample(tag: CellTag, params: &[Rat], n: usize) -> Result<CellSample> {
    if n < 4 {
        return Err(Error::InvalidInput("need n >= 4".into()));
    }
    let cyc = |i: i64| ((i - 1).rem_euclid(n as i64)) as usize + 1;
    let positive = |k: usize| -> Result<()> {
        if params.len() != k {
            return Err(Error::InvalidInput(format!("expected {k} parameters, got {}", params.len())));
        }
        if params.iter().any(|p| !p.is_positive()) {
            return Err(Error::InvalidInput("parameters must be strictly positive".into()));
        }
        Ok(())
    };
    let x = match tag {
        CellTag::Interior => {
            if params.len() != n {
                return Err(Error::InvalidInput(format!("interior needs {n} increasing parameters")));
            }
            for w in params.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::InvalidInput("interior parameters must strictly increase".into()));
                }
            }
            if !params[0].is_positive() {
                return Err(Error::InvalidInput("interior parameters must be positive".into()));
            }
            QMatrix::from_rows(vec![vec![Rat::one(); n], params.to_vec()])
        }
        CellTag::Facet(i) => {
            positive(3)?;
            let base = QMatrix::from_rows(vec![
                unit_row(n, &[(1, Rat::one()), (2, params[0].clone())]),
                unit_row(n, &[(2, params[1].clone()), (3, params[2].clone()), (4, Rat::one())]),
            ]);
            sigma_pow(&base, cyc(i as i64) - 1)
        }
        CellTag::PlaneI(i) => {
            positive(2)?;
            let base = QMatrix::from_rows(vec![
                unit_row(n, &[(2, Rat::one()), (3, params[0].clone()), (4, params[1].clone())]),
                unit_row(n, &[(1, -Rat::one())]),
            ]);
            sigma_pow(&base, cyc(i as i64) - 1)
        }
        CellTag::PlaneII(i) => {
            positive(2)?;
            let base = QMatrix::from_rows(vec![
                unit_row(n, &[(1, params[0].clone()), (n, -Rat::one())]),
                unit_row(n, &[(1, params[1].clone()), (2, Rat::one())]),
            ]);
            sigma_pow(&base, cyc(i as i64) - 1)
        }
        CellTag::QuadricIII(i0, j0) => {
            positive(2)?;
            let (i, j) = normalize_disjoint_pair(i0, j0, n)?;
            if j < n {
                QMatrix::from_rows(vec![
                    unit_row(n, &[(i, Rat::one()), (i + 1, params[0].clone())]),
                    unit_row(n, &[(j, params[1].clone()), (j + 1, Rat::one())]),
                ])
            } else {
                // wrap-around block {n, 1}
                QMatrix::from_rows(vec![
                    unit_row(n, &[(i, Rat::one()), (i + 1, params[0].clone())]),
                    unit_row(n, &[(1, -Rat::one()), (n, params[1].clone())]),
                ])
            }
        }
        CellTag::LineI(i) => {
            positive(1)?;
            let base = QMatrix::from_rows(vec![
                unit_row(n, &[(1, Rat::one())]),
                unit_row(n, &[(2, params[0].clone()), (n, Rat::one())]),
            ]);
            sigma_pow(&base, cyc(i as i64) - 1)
        }
        CellTag::LineII(i0, j0) => {
            positive(1)?;
            let i = cyc(i0 as i64);
            let j = cyc(j0 as i64);
            if i == j || i == cyc(j as i64 + 1) {
                return Err(Error::InvalidInput(format!("line-II needs i not in {{j, j+1}}: i={i}, j={j}")));
            }
            let vrow = unit_row(n, &[(i, Rat::one())]);
            if j < n {
                let lrow = unit_row(n, &[(j, Rat::one()), (j + 1, params[0].clone())]);
                if i < j {
                    QMatrix::from_rows(vec![vrow, lrow])
                } else {
                    QMatrix::from_rows(vec![lrow, vrow])
                }
            } else {
                let lrow = unit_row(n, &[(1, -Rat::one()), (n, params[0].clone())]);
                QMatrix::from_rows(vec![vrow, lrow])
            }
        }
    };
    if !is_totally_nonnegative_2xn(&x) {
        return Err(Error::Inconsistent("constructed cell matrix is not totally nonnegative".into()));
    }
    if x.rank() != 2 {
        return Err(Error::Inconsistent("constructed cell matrix is rank deficient".into()));
    }
    Ok(CellSample { x, tag, params: params.to_vec() })
}

fn normalize_disjoint_pair(i: usize, j: usize, n: usize) -> Result<(usize, usize)> {
    let cyc = |v: i64| ((v - 1).rem_euclid(n as i64)) as usize + 1;
    let (i, j) = (cyc(i as i64), cyc(j as i64));
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let adjacent = j == i + 1 || (i == 1 && j == n);
    if i == j || adjacent {
        return Err(Error::InvalidInput(format!("edge blocks {{{i},{}}} and {{{j},{}}} must be disjoint", i + 1, j + 1)));
    }
    Ok((i, j))
}

/// Rank-one certificate: with <AB i(i+1)> = 0 on the image of a nonnegative
/// matrix, every 2x2 minor avoiding columns i, i+1 must vanish.
pub fn rank_one_certificate(x: &QMatrix, i: usize) -> bool {
    let n = x.cols();
    let cyc = |v: i64| ((v - 1).rem_euclid(n as i64)) as usize + 1;
    let (ci, ci1) = (cyc(i as i64), cyc(i as i64 + 1));
    minors_2xn(x)
        .iter()
        .filter(|(a, b, _)| *a != ci && *a != ci1 && *b != ci && *b != ci1)
        .all(|(_, _, d)| d.is_zero())
}

/// Projection away from AB: verify det(z_a z_b) = c * <AB ab> for a single
/// nonzero c, where the z_a are the images of the rows of Z under a basis of
/// the orthogonal complement of AB. Returns the constant c.
pub fn projection_identity_check(ab: &Pluecker, z: &ZMatrix) -> Result<Rat> {
    let y = ab.representative();
    let yperp_cols = y.kernel();
    debug_assert_eq!(yperp_cols.len(), 2);
    let yperp = QMatrix::from_rows(vec![yperp_cols[0].col_vec(0), yperp_cols[1].col_vec(0)]);
    projection_identity_with(ab, z, &yperp)
}

/// Same check with a caller-chosen complement basis; c depends on the choice.
pub fn projection_identity_with(ab: &Pluecker, z: &ZMatrix, yperp: &QMatrix) -> Result<Rat> {
    let m = yperp.mul(&z.matrix().transpose())?; // 2 x n, columns z_a
    let n = z.n();
    let mut c: Option<Rat> = None;
    for a in 1..=n {
        for b in a + 1..=n {
            let minor = &m[(0, a - 1)] * &m[(1, b - 1)] - &m[(0, b - 1)] * &m[(1, a - 1)];
            let bracket = crate::grassmann::bracket_pq(ab, &z.line(a as i64, b as i64));
            match (&c, bracket.is_zero()) {
                (_, true) => {
                    if !minor.is_zero() {
                        return Err(Error::Inconsistent(format!(
                            "projection minor ({a},{b}) nonzero where the bracket vanishes"
                        )));
                    }
                }
                (None, false) => c = Some(minor / bracket),
                (Some(c0), false) => {
                    if &minor != &(c0 * &bracket) {
                        return Err(Error::Inconsistent(format!(
                            "projection identity fails at ({a},{b})"
                        )));
                    }
                }
            }
        }
    }
    c.ok_or_else(|| Error::Degenerate("all brackets vanish; cannot determine c".into()))
}
