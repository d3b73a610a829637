//! The boundary stratification of the amplituhedron: fourteen stratum types
//! with their index constraints, closed-form counts, incidence table,
//! residual classification, exact vertex points, and rational parametrizations
//! of the residual lines and conics.
//!
//! Indices are cyclic (Z_{n+j} = Z_j) and 1-based. Unordered index groups are
//! stored sorted, so every stratum has one canonical id.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{
    bracket_covector, join_line_point, join_points, meet_line_plane, plane_conditions,
    point_conditions, star, Pluecker, PointP3,
};
use crate::matrix::QMatrix;
use crate::poly::PolyQ;
use crate::rat::Rat;
use crate::zinput::ZMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StratumType {
    #[serde(rename = "3I")]
    D3I,
    #[serde(rename = "2I")]
    D2I,
    #[serde(rename = "2II")]
    D2II,
    #[serde(rename = "2III")]
    D2III,
    #[serde(rename = "1I")]
    D1I,
    #[serde(rename = "1II")]
    D1II,
    #[serde(rename = "1III")]
    D1III,
    #[serde(rename = "1IV")]
    D1IV,
    #[serde(rename = "0I")]
    D0I,
    #[serde(rename = "0II")]
    D0II,
    #[serde(rename = "0III")]
    D0III,
    #[serde(rename = "0IV")]
    D0IV,
    #[serde(rename = "0V")]
    D0V,
    #[serde(rename = "0VI")]
    D0VI,
}

pub const ALL_TYPES: [StratumType; 14] = [
    StratumType::D3I,
    StratumType::D2I,
    StratumType::D2II,
    StratumType::D2III,
    StratumType::D1I,
    StratumType::D1II,
    StratumType::D1III,
    StratumType::D1IV,
    StratumType::D0I,
    StratumType::D0II,
    StratumType::D0III,
    StratumType::D0IV,
    StratumType::D0V,
    StratumType::D0VI,
];

impl StratumType {
    pub fn label(&self) -> &'static str {
        match self {
            StratumType::D3I => "3I",
            StratumType::D2I => "2I",
            StratumType::D2II => "2II",
            StratumType::D2III => "2III",
            StratumType::D1I => "1I",
            StratumType::D1II => "1II",
            StratumType::D1III => "1III",
            StratumType::D1IV => "1IV",
            StratumType::D0I => "0I",
            StratumType::D0II => "0II",
            StratumType::D0III => "0III",
            StratumType::D0IV => "0IV",
            StratumType::D0V => "0V",
            StratumType::D0VI => "0VI",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            StratumType::D3I => 3,
            StratumType::D2I | StratumType::D2II | StratumType::D2III => 2,
            StratumType::D1I | StratumType::D1II | StratumType::D1III | StratumType::D1IV => 1,
            _ => 0,
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            StratumType::D3I | StratumType::D2I | StratumType::D2II | StratumType::D1I => 1,
            StratumType::D2III
            | StratumType::D1II
            | StratumType::D1III
            | StratumType::D0I
            | StratumType::D0II
            | StratumType::D0III => 2,
            StratumType::D1IV | StratumType::D0IV | StratumType::D0V => 3,
            StratumType::D0VI => 4,
        }
    }

    /// Degree of the stratum as listed in the stratification table (conics
    /// and quadric surfaces have degree 2, as do the vertex pairs of type 0VI).
    pub fn degree(&self) -> u8 {
        match self {
            StratumType::D2III | StratumType::D1IV | StratumType::D0VI => 2,
            _ => 1,
        }
    }

    /// True for the strata that never meet the amplituhedron.
    pub fn residual(&self) -> bool {
        matches!(
            self,
            StratumType::D1III
                | StratumType::D1IV
                | StratumType::D0II
                | StratumType::D0III
                | StratumType::D0IV
                | StratumType::D0V
                | StratumType::D0VI
        )
    }
}

pub fn classify_residual(ty: StratumType) -> bool {
    ty.residual()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StratumId {
    #[serde(rename = "type")]
    pub ty: StratumType,
    pub indices: Vec<usize>,
}

/// Schubert incidence conditions on a line AB.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Schubert {
    /// AB meets the line Z_a Z_b.
    Line(usize, usize),
    /// Z_a lies on AB.
    Vertex(usize),
    /// AB lies in the plane Z_{a-1} Z_a Z_{a+1} (centered at a).
    Plane(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    First,
    Second,
    Third,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StratumInfo {
    pub id: StratumId,
    pub schubert: Vec<Schubert>,
    pub degree: u8,
    pub residual: bool,
    pub kind: Option<Kind>,
}

fn cyc(n: usize, i: i64) -> usize {
    ((i - 1).rem_euclid(n as i64)) as usize + 1
}

/// Cyclic gap walking forward from a to b (0 when equal).
fn gap(n: usize, a: usize, b: usize) -> usize {
    ((b as i64 - a as i64).rem_euclid(n as i64)) as usize
}

/// Distance between edge blocks {a, a+1} and {b, b+1} on the n-cycle.
fn edge_block_distance(n: usize, a: usize, b: usize) -> usize {
    std::cmp::min(gap(n, cyc(n, a as i64 + 1), b), gap(n, cyc(n, b as i64 + 1), a))
}

/// Edge blocks {a,a+1}, {b,b+1} are disjoint.
fn edges_disjoint(n: usize, a: usize, b: usize) -> bool {
    a != b && gap(n, a, b) != 1 && gap(n, b, a) != 1
}

impl StratumId {
    pub fn new(ty: StratumType, indices: &[usize], n: usize) -> StratumId {
        assert_eq!(indices.len(), ty.arity(), "wrong index arity for {}", ty.label());
        let mut idx: Vec<usize> = indices.iter().map(|&i| cyc(n, i as i64)).collect();
        // sort the unordered groups
        match ty {
            StratumType::D2III | StratumType::D1IV | StratumType::D0I | StratumType::D0II | StratumType::D0VI => {
                idx.sort_unstable()
            }
            StratumType::D0IV | StratumType::D0V => idx[1..].sort_unstable(),
            _ => {}
        }
        StratumId { ty, indices: idx }
    }

    pub fn dim(&self) -> usize {
        self.ty.dim()
    }

    /// Index constraints of the stratification table.
    pub fn is_valid(&self, n: usize) -> bool {
        let ix = &self.indices;
        let distinct = ix.iter().collect::<BTreeSet<_>>().len() == ix.len();
        if !distinct {
            return false;
        }
        match self.ty {
            StratumType::D3I | StratumType::D2I | StratumType::D2II | StratumType::D1I => true,
            StratumType::D2III => edges_disjoint(n, ix[0], ix[1]),
            StratumType::D1II => {
                // i not in {j, j+1}
                ix[0] != ix[1] && ix[0] != cyc(n, ix[1] as i64 + 1)
            }
            StratumType::D1III | StratumType::D0III => {
                // {i-1, i, i+1} disjoint from {j, j+1}
                let (i, j) = (ix[0], ix[1]);
                ![-1i64, 0, 1].iter().any(|d| {
                    let a = cyc(n, i as i64 + d);
                    a == j || a == cyc(n, j as i64 + 1)
                })
            }
            StratumType::D1IV | StratumType::D0VI => {
                (0..ix.len()).all(|a| (a + 1..ix.len()).all(|b| edges_disjoint(n, ix[a], ix[b])))
            }
            StratumType::D0I => true,
            StratumType::D0II => {
                // plane triples {i-1,i,i+1}, {j-1,j,j+1} disjoint
                gap(n, ix[0], ix[1]) >= 3 && gap(n, ix[1], ix[0]) >= 3
            }
            StratumType::D0IV => {
                let (i, j, k) = (ix[0], ix[1], ix[2]);
                edges_disjoint(n, j, k)
                    && ![j, cyc(n, j as i64 + 1), k, cyc(n, k as i64 + 1)].contains(&i)
            }
            StratumType::D0V => {
                let (i, j, k) = (ix[0], ix[1], ix[2]);
                let plane_hits = |e: usize| {
                    [-1i64, 0, 1].iter().any(|d| {
                        let a = cyc(n, i as i64 + d);
                        a == e || a == cyc(n, e as i64 + 1)
                    })
                };
                edges_disjoint(n, j, k) && !plane_hits(j) && !plane_hits(k)
            }
        }
    }

    pub fn schubert_conditions(&self, n: usize) -> Vec<Schubert> {
        let ix = &self.indices;
        let edge = |i: usize| Schubert::Line(i, cyc(n, i as i64 + 1));
        match self.ty {
            StratumType::D3I => vec![edge(ix[0])],
            StratumType::D2I => vec![Schubert::Vertex(ix[0])],
            StratumType::D2II => vec![Schubert::Plane(ix[0])],
            StratumType::D2III => vec![edge(ix[0]), edge(ix[1])],
            StratumType::D1I => vec![
                Schubert::Vertex(ix[0]),
                Schubert::Line(cyc(n, ix[0] as i64 - 1), cyc(n, ix[0] as i64 + 1)),
            ],
            StratumType::D1II => vec![Schubert::Vertex(ix[0]), edge(ix[1])],
            StratumType::D1III => vec![Schubert::Plane(ix[0]), edge(ix[1])],
            StratumType::D1IV => vec![edge(ix[0]), edge(ix[1]), edge(ix[2])],
            StratumType::D0I => vec![Schubert::Vertex(ix[0]), Schubert::Vertex(ix[1])],
            StratumType::D0II => vec![Schubert::Plane(ix[0]), Schubert::Plane(ix[1])],
            StratumType::D0III => vec![
                Schubert::Vertex(ix[0]),
                Schubert::Line(cyc(n, ix[0] as i64 - 1), cyc(n, ix[0] as i64 + 1)),
                edge(ix[1]),
            ],
            StratumType::D0IV => vec![Schubert::Vertex(ix[0]), edge(ix[1]), edge(ix[2])],
            StratumType::D0V => vec![Schubert::Plane(ix[0]), edge(ix[1]), edge(ix[2])],
            StratumType::D0VI => ix.iter().map(|&i| edge(i)).collect(),
        }
    }
}

/// Condition rows in the six Plücker variables for one Schubert condition.
pub fn schubert_rows(cond: &Schubert, z: &ZMatrix) -> QMatrix {
    match cond {
        Schubert::Line(a, b) => {
            QMatrix::from_rows(vec![bracket_covector(&z.line(*a as i64, *b as i64))])
        }
        Schubert::Vertex(a) => point_conditions(&z.point(*a as i64)),
        Schubert::Plane(a) => plane_conditions(&z.plane(*a as i64)),
    }
}

pub fn conditions_matrix(id: &StratumId, z: &ZMatrix) -> QMatrix {
    let blocks: Vec<QMatrix> = id
        .schubert_conditions(z.n())
        .iter()
        .map(|c| schubert_rows(c, z))
        .collect();
    QMatrix::stack(&blocks)
}

/// Does the point satisfy every Schubert condition of the stratum?
pub fn satisfies_conditions(id: &StratumId, z: &ZMatrix, p: &Pluecker) -> bool {
    let m = conditions_matrix(id, z);
    (0..m.rows()).all(|r| {
        (0..6)
            .map(|c| &m[(r, c)] * &p.coords()[c])
            .sum::<Rat>()
            .is_zero()
    })
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut acc = 1i64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Closed-form count of strata of one type (0 where the formula would go
/// negative for very small n).
pub fn type_count(n: usize, ty: StratumType) -> usize {
    let n = n as i64;
    let v = match ty {
        StratumType::D3I | StratumType::D2I | StratumType::D2II | StratumType::D1I => n,
        StratumType::D2III => binom(n, 2) - n,
        StratumType::D1II => n * (n - 2),
        StratumType::D1III | StratumType::D0III => n * (n - 4),
        StratumType::D1IV => binom(n, 3) - n * (n - 3),
        StratumType::D0I => binom(n, 2),
        StratumType::D0II => n * (n - 5) / 2,
        StratumType::D0IV => n * binom(n - 3, 2),
        StratumType::D0V => n * binom(n - 5, 2),
        StratumType::D0VI => n * (n - 5) * (n - 6) * (n - 7) / 24,
    };
    v.max(0) as usize
}

/// All strata of one type, canonical ids in sorted order.
pub fn enumerate_type(n: usize, ty: StratumType) -> Vec<StratumId> {
    let arity = ty.arity();
    let mut out = BTreeSet::new();
    let mut tuple = vec![1usize; arity];
    loop {
        let id = StratumId::new(ty, &tuple, n);
        if id.is_valid(n) {
            out.insert(id);
        }
        // odometer over 1..=n
        let mut pos = arity;
        while pos > 0 {
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] <= n {
                break;
            }
            tuple[pos] = 1;
            if pos == 0 {
                return out.into_iter().collect();
            }
        }
    }
}

pub fn enumerate_strata(n: usize) -> Vec<StratumInfo> {
    assert!(n >= 4);
    let mut out = Vec::new();
    for ty in ALL_TYPES {
        for id in enumerate_type(n, ty) {
            let kind = if matches!(ty, StratumType::D1III | StratumType::D1IV) {
                Some(residual_kind(&id, n))
            } else {
                None
            };
            out.push(StratumInfo {
                schubert: id.schubert_conditions(n),
                degree: ty.degree(),
                residual: ty.residual(),
                kind,
                id,
            });
        }
    }
    out
}

/// Number of residual vertices: the quartic closed form, cross-checked
/// against the per-type sum with the 0VI point pairs counted twice.
pub fn residual_count(n: usize) -> usize {
    let nn = n as i64;
    let quartic = (nn.pow(4) - 6 * nn.pow(3) + 17 * nn * nn - 36 * nn) / 12;
    let by_type = type_count(n, StratumType::D0II) as i64
        + type_count(n, StratumType::D0III) as i64
        + type_count(n, StratumType::D0IV) as i64
        + type_count(n, StratumType::D0V) as i64
        + 2 * type_count(n, StratumType::D0VI) as i64;
    assert_eq!(quartic, by_type, "residual vertex count identity failed at n={n}");
    quartic as usize
}

/// The incidence table: the 1-dimensional strata through a 0-dimensional
/// stratum. Rows are emitted literally; for extreme index coincidences a
/// listed 1IV triple may violate its own index constraint, but its Schubert
/// conditions still hold at the vertex.
pub fn incidence_vertices(id: &StratumId, n: usize) -> Vec<StratumId> {
    assert_eq!(id.dim(), 0, "incidence table is for vertices");
    let ix = &id.indices;
    let mk = |ty: StratumType, v: &[usize]| StratumId::new(ty, v, n);
    match id.ty {
        StratumType::D0I => {
            let (a, b) = (ix[0], ix[1]);
            let adjacent_i = if gap(n, a, b) == 1 {
                Some(a)
            } else if gap(n, b, a) == 1 {
                Some(b)
            } else {
                None
            };
            match adjacent_i {
                Some(i) => {
                    let i1 = cyc(n, i as i64 + 1);
                    vec![
                        mk(StratumType::D1I, &[i]),
                        mk(StratumType::D1I, &[i1]),
                        mk(StratumType::D1II, &[i, i1]),
                        mk(StratumType::D1II, &[i1, cyc(n, i as i64 - 1)]),
                    ]
                }
                None => {
                    let (i, j) = (a, b);
                    vec![
                        mk(StratumType::D1II, &[i, j]),
                        mk(StratumType::D1II, &[i, cyc(n, j as i64 - 1)]),
                        mk(StratumType::D1II, &[j, i]),
                        mk(StratumType::D1II, &[j, cyc(n, i as i64 - 1)]),
                    ]
                }
            }
        }
        StratumType::D0II => {
            let (i, j) = (ix[0], ix[1]);
            vec![
                mk(StratumType::D1III, &[i, j]),
                mk(StratumType::D1III, &[i, cyc(n, j as i64 - 1)]),
                mk(StratumType::D1III, &[j, i]),
                mk(StratumType::D1III, &[j, cyc(n, i as i64 - 1)]),
            ]
        }
        StratumType::D0III => {
            let (i, j) = (ix[0], ix[1]);
            vec![
                mk(StratumType::D1I, &[i]),
                mk(StratumType::D1II, &[i, j]),
                mk(StratumType::D1III, &[i, j]),
            ]
        }
        StratumType::D0IV => {
            let (i, j, k) = (ix[0], ix[1], ix[2]);
            vec![
                mk(StratumType::D1II, &[i, j]),
                mk(StratumType::D1II, &[i, k]),
                mk(StratumType::D1IV, &[cyc(n, i as i64 - 1), j, k]),
                mk(StratumType::D1IV, &[i, j, k]),
            ]
        }
        StratumType::D0V => {
            let (i, j, k) = (ix[0], ix[1], ix[2]);
            vec![
                mk(StratumType::D1III, &[i, j]),
                mk(StratumType::D1III, &[i, k]),
                mk(StratumType::D1IV, &[cyc(n, i as i64 - 1), j, k]),
                mk(StratumType::D1IV, &[i, j, k]),
            ]
        }
        StratumType::D0VI => {
            let mut out = Vec::new();
            for drop in (0..4).rev() {
                let tri: Vec<usize> = ix
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| *p != drop)
                    .map(|(_, &v)| v)
                    .collect();
                out.push(mk(StratumType::D1IV, &tri));
            }
            out
        }
        _ => unreachable!(),
    }
}

/// Exact coordinates of a 0-dimensional stratum.
#[derive(Debug, Clone)]
pub enum VertexPoint {
    Point(Pluecker),
    /// Type 0VI: a pencil basis plus the restricted quadric; the two roots of
    /// a*s^2 + b*s + c (in the pencil parameter) are the two transversal
    /// lines, kept symbolic since they are irrational in general.
    Pencil { basis: [Vec<Rat>; 2], quadratic: [Rat; 3], discriminant: Rat },
}

pub fn vertex_point(id: &StratumId, z: &ZMatrix) -> Result<VertexPoint> {
    z.require_generic()?;
    let n = z.n();
    if id.dim() != 0 {
        return Err(Error::InvalidInput(format!("{}{:?} is not a vertex type", id.ty.label(), id.indices)));
    }
    if !id.is_valid(n) {
        return Err(Error::InvalidInput(format!("invalid indices {:?} for {}", id.indices, id.ty.label())));
    }
    let cond = conditions_matrix(id, z);
    let kernel = cond.kernel();
    if id.ty == StratumType::D0VI {
        if kernel.len() != 2 {
            return Err(Error::KernelDimension { expected: 2, got: kernel.len() });
        }
        let b0 = kernel[0].col_vec(0);
        let b1 = kernel[1].col_vec(0);
        let q = |u: &[Rat], v: &[Rat]| -> Rat {
            let ua: [Rat; 6] = std::array::from_fn(|k| u[k].clone());
            let s = star(&ua);
            (0..6).map(|k| &s[k] * &v[k]).sum()
        };
        // Q(s*b0 + t*b1) = s^2 Q(b0) + st B(b0,b1) + t^2 Q(b1), with the
        // pairing B polarizing twice the quadric
        let two = Rat::one() + Rat::one();
        let a = q(&b0, &b0) / &two;
        let b = q(&b0, &b1);
        let c = q(&b1, &b1) / &two;
        let four = &two * &two;
        let discriminant = &b * &b - four * &a * &c;
        return Ok(VertexPoint::Pencil { basis: [b0, b1], quadratic: [a, b, c], discriminant });
    }
    if kernel.len() != 1 {
        return Err(Error::KernelDimension { expected: 1, got: kernel.len() });
    }
    let v = kernel[0].col_vec(0);
    let p = Pluecker::from_slice(&v).map_err(|_| {
        Error::Inconsistent(format!(
            "vertex {}{:?} does not satisfy the Plücker relation; Z is not generic enough",
            id.ty.label(),
            id.indices
        ))
    })?;
    let p = p.primitive();
    debug_assert!(satisfies_conditions(id, z, &p));
    Ok(VertexPoint::Point(p))
}

/// A rational curve of lines: six Plücker coordinates as polynomials in t.
#[derive(Debug, Clone)]
pub struct CurveParam {
    pub id: StratumId,
    pub component_degree: u8,
    pub pluecker_polys: [PolyQ; 6],
    /// Edge indices whose bracket vanishes identically along the curve.
    pub marked: Vec<usize>,
}

impl CurveParam {
    /// Evaluate at a parameter value; None when the coordinate vector
    /// degenerates to zero there.
    pub fn eval(&self, t: &Rat) -> Option<Pluecker> {
        let v: Vec<Rat> = self.pluecker_polys.iter().map(|p| p.eval1(t)).collect();
        if v.iter().all(|x| x.is_zero()) {
            return None;
        }
        Some(Pluecker::from_slice(&v).expect("curve lies on the quadric").primitive())
    }

    /// Restriction of a linear form (covector in the six Plücker variables).
    pub fn restrict_covector(&self, row: &[Rat]) -> PolyQ {
        let mut acc = PolyQ::zero(1);
        for k in 0..6 {
            acc = acc.add(&self.pluecker_polys[k].scale(&row[k]));
        }
        acc
    }

    /// Restriction of a polynomial in the six Plücker variables.
    pub fn restrict_poly(&self, poly6: &PolyQ) -> PolyQ {
        poly6.compose(&self.pluecker_polys.clone())
    }

    /// Coefficient vectors: the t-degree-d coefficient of the coordinate vector.
    pub fn coeff_vector(&self, d: u32) -> Vec<Rat> {
        self.pluecker_polys
            .iter()
            .map(|p| p.coeff(&crate::poly::exp1(d)))
            .collect()
    }

    /// First `count` admissible sample points at t = 1, 2, 3, ... skipping
    /// degenerate values and the exclusions.
    pub fn sample(&self, count: usize, exclude: &[Rat]) -> Result<Vec<(Rat, Pluecker)>> {
        let mut out = Vec::with_capacity(count);
        let mut t = Rat::zero();
        let mut attempts = 0;
        while out.len() < count {
            t += Rat::one();
            attempts += 1;
            if attempts > 1000 {
                return Err(Error::Degenerate("could not find enough admissible sample parameters".into()));
            }
            if exclude.contains(&t) {
                continue;
            }
            if let Some(p) = self.eval(&t) {
                out.push((t.clone(), p));
            }
        }
        Ok(out)
    }
}

/// The pencil of lines inside the plane Z_{i-1} Z_i Z_{i+1} through the point
/// where the marked line Z_j Z_{j+1} crosses it. The parameter sweeps
/// q v (r0 + t Z_i), so t = 0 is a vertex of type 0IV and the limit t -> inf
/// is the 0III vertex q v Z_i.
pub fn residual_line_param(id: &StratumId, z: &ZMatrix) -> Result<CurveParam> {
    z.require_generic()?;
    let n = z.n();
    if id.ty != StratumType::D1III || !id.is_valid(n) {
        return Err(Error::InvalidInput(format!("not a residual line id: {}{:?}", id.ty.label(), id.indices)));
    }
    let (i, j) = (id.indices[0] as i64, id.indices[1] as i64);
    let q = meet_line_plane(&z.edge_line(j), &z.plane(i))
        .map_err(|_| Error::Degenerate("marked line lies in the plane".into()))?;
    // choose r0 among Z_{i-1}, Z_{i+1} by the larger plane-covector norm
    let zi = z.point(i);
    let score = |r0: &PointP3| -> Option<Rat> {
        let l = join_points(&q, r0).ok()?;
        let h = join_line_point(&l, &zi).ok()?;
        Some(h.0.iter().map(|x| x * x).sum())
    };
    let cands = [z.point(i - 1), z.point(i + 1)];
    let s0 = score(&cands[0]);
    let s1 = score(&cands[1]);
    let r0 = match (s0, s1) {
        (None, None) => return Err(Error::Degenerate("pencil base points collapse".into())),
        (Some(_), None) => &cands[0],
        (None, Some(_)) => &cands[1],
        (Some(a), Some(b)) => {
            if a >= b {
                &cands[0]
            } else {
                &cands[1]
            }
        }
    };
    let base = join_points(&q, r0)?;
    let dir = join_points(&q, &zi)?;
    let polys: [PolyQ; 6] = std::array::from_fn(|k| {
        PolyQ::from_coeffs(&[base.coords()[k].clone(), dir.coords()[k].clone()])
    });
    let marked = vec![cyc(n, i - 1), cyc(n, i), cyc(n, j)];
    let param = CurveParam { id: id.clone(), component_degree: 1, pluecker_polys: polys, marked };
    verify_param(&param, z, i)?;
    Ok(param)
}

/// The conic of transversal lines through the edge Z_i Z_{i+1} meeting the
/// marked lines Z_j Z_{j+1} and Z_k Z_{k+1}: for p(t) = Z_i + t Z_{i+1}, the
/// line is the meet of the planes p(t) v Z_jZ_{j+1} and p(t) v Z_kZ_{k+1};
/// Plücker coordinates are quadratic in t.
pub fn residual_conic_param(id: &StratumId, z: &ZMatrix) -> Result<CurveParam> {
    z.require_generic()?;
    let n = z.n();
    if id.ty != StratumType::D1IV || !id.is_valid(n) {
        return Err(Error::InvalidInput(format!("not a residual conic id: {}{:?}", id.ty.label(), id.indices)));
    }
    let (i, j, k) = (id.indices[0] as i64, id.indices[1] as i64, id.indices[2] as i64);
    // plane(t) = dual(edge) . (Z_i + t Z_{i+1}): linear 4-vector polynomials
    let plane_pencil = |edge: i64| -> [PolyQ; 4] {
        let dm = z.edge_line(edge).dual_matrix();
        let (zi, zi1) = (z.point(i), z.point(i + 1));
        std::array::from_fn(|r| {
            let a: Rat = (0..4).map(|c| &dm[(r, c)] * &zi.0[c]).sum();
            let b: Rat = (0..4).map(|c| &dm[(r, c)] * &zi1.0[c]).sum();
            PolyQ::from_coeffs(&[a, b])
        })
    };
    let h1 = plane_pencil(j);
    let h2 = plane_pencil(k);
    // meet of the two planes: d_ab = h1_a h2_b - h1_b h2_a, then Hodge star
    let pairs = crate::grassmann::PAIRS;
    let d: [PolyQ; 6] = std::array::from_fn(|pos| {
        let (a, b) = pairs[pos];
        h1[a].mul(&h2[b]).sub(&h1[b].mul(&h2[a]))
    });
    let polys: [PolyQ; 6] = [
        d[5].clone(),
        d[4].neg(),
        d[3].clone(),
        d[2].clone(),
        d[1].neg(),
        d[0].clone(),
    ];
    let marked = vec![cyc(n, i), cyc(n, j), cyc(n, k)];
    let param = CurveParam { id: id.clone(), component_degree: 2, pluecker_polys: polys, marked };
    verify_param(&param, z, i)?;
    Ok(param)
}

/// The parametrized curve must stay on the quadric and satisfy its defining
/// conditions identically in t.
fn verify_param(param: &CurveParam, z: &ZMatrix, _anchor: i64) -> Result<()> {
    if param.pluecker_polys.iter().all(|p| p.is_zero()) {
        return Err(Error::Degenerate("curve parametrization collapsed".into()));
    }
    // quadric holds identically
    let v6 = |k| PolyQ::var(6, k);
    let quadric = v6(0).mul(&v6(5)).sub(&v6(1).mul(&v6(4))).add(&v6(2).mul(&v6(3)));
    if !param.restrict_poly(&quadric).is_zero() {
        return Err(Error::Inconsistent("parametrized curve leaves the Plücker quadric".into()));
    }
    // defining conditions hold identically
    for cond in param.id.schubert_conditions(z.n()) {
        let rows = schubert_rows(&cond, z);
        for r in 0..rows.rows() {
            let restricted = param.restrict_covector(rows.row(r));
            if !restricted.is_zero() {
                return Err(Error::Inconsistent("curve violates a defining Schubert condition".into()));
            }
        }
    }
    Ok(())
}

pub fn residual_kind(id: &StratumId, n: usize) -> Kind {
    match id.ty {
        StratumType::D1III => {
            let (i, j) = (id.indices[0], id.indices[1]);
            // distance between the plane block {i-1,i,i+1} and the edge block
            let right = gap(n, cyc(n, i as i64 + 1), j);
            let left = gap(n, cyc(n, j as i64 + 1), cyc(n, i as i64 - 1));
            if right.min(left) == 1 {
                Kind::First
            } else {
                Kind::Second
            }
        }
        StratumType::D1IV => {
            let ix = &id.indices;
            let close = (0..3)
                .flat_map(|a| (a + 1..3).map(move |b| (a, b)))
                .filter(|&(a, b)| edge_block_distance(n, ix[a], ix[b]) == 1)
                .count();
            match close {
                0 => Kind::Third,
                1 => Kind::Second,
                _ => Kind::First,
            }
        }
        _ => panic!("kinds are defined for residual curves only"),
    }
}

/// All residual curve ids at level n, lines then conics, canonical order.
pub fn residual_curves(n: usize) -> Vec<StratumId> {
    let mut out = enumerate_type(n, StratumType::D1III);
    out.extend(enumerate_type(n, StratumType::D1IV));
    out
}

/// The boundary one-skeleton: 0I vertices joined by the segments inside the
/// 1I and 1II lines.
#[derive(Debug, Clone)]
pub struct SkeletonGraph {
    pub vertices: Vec<(usize, usize)>,
    pub edges: Vec<((usize, usize), (usize, usize), StratumId)>,
    pub connected: bool,
}

impl SkeletonGraph {
    pub fn degree(&self, v: (usize, usize)) -> usize {
        self.edges.iter().filter(|(a, b, _)| *a == v || *b == v).count()
    }
}

pub fn one_skeleton(n: usize) -> SkeletonGraph {
    assert!(n >= 4);
    let sorted = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let vertices: Vec<(usize, usize)> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect();
    let mut edges = Vec::new();
    for i in 1..=n {
        let a = sorted(cyc(n, i as i64 - 1), i);
        let b = sorted(i, cyc(n, i as i64 + 1));
        edges.push((a, b, StratumId::new(StratumType::D1I, &[i], n)));
    }
    for id in enumerate_type(n, StratumType::D1II) {
        let (i, j) = (id.indices[0], id.indices[1]);
        let a = sorted(i, j);
        let b = sorted(i, cyc(n, j as i64 + 1));
        edges.push((a, b, id));
    }
    // BFS
    let mut seen = BTreeSet::new();
    let mut queue = vec![vertices[0]];
    seen.insert(vertices[0]);
    while let Some(v) = queue.pop() {
        for (a, b, _) in &edges {
            let other = if *a == v {
                Some(*b)
            } else if *b == v {
                Some(*a)
            } else {
                None
            };
            if let Some(o) = other {
                if seen.insert(o) {
                    queue.push(o);
                }
            }
        }
    }
    let connected = seen.len() == vertices.len();
    SkeletonGraph { vertices, edges, connected }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use num_traits::Signed;
    use crate::zinput::moment_curve_default;

    #[test]
    fn counts_match_closed_forms() {
        for n in 4..=12 {
            for ty in ALL_TYPES {
                assert_eq!(
                    enumerate_type(n, ty).len(),
                    type_count(n, ty),
                    "count mismatch for {} at n={n}",
                    ty.label()
                );
            }
        }
    }

    #[test]
    fn count_vector_n5() {
        let expect = [5, 5, 5, 5, 5, 15, 5, 0, 10, 0, 5, 5, 0, 0];
        for (ty, e) in ALL_TYPES.iter().zip(expect) {
            assert_eq!(type_count(5, *ty), e, "{}", ty.label());
        }
    }

    #[test]
    fn spot_counts() {
        assert_eq!(type_count(6, StratumType::D1IV), 2);
        assert_eq!(type_count(6, StratumType::D0II), 3);
        assert_eq!(type_count(8, StratumType::D0VI), 2);
        // alternative route: k pairwise non-adjacent blocks on the n-cycle
        for n in 6..=12i64 {
            let direct = type_count(n as usize, StratumType::D1IV) as i64;
            assert_eq!(direct, n * binom(n - 4, 2) / 3, "n={n}");
        }
    }

    #[test]
    fn residual_counts() {
        assert_eq!(residual_count(4), 0);
        assert_eq!(residual_count(5), 10);
        assert_eq!(residual_count(6), 33);
        assert_eq!(residual_count(8), 152);
        // type breakdown at n=8
        assert_eq!(type_count(8, StratumType::D0II), 12);
        assert_eq!(type_count(8, StratumType::D0III), 32);
        assert_eq!(type_count(8, StratumType::D0IV), 80);
        assert_eq!(type_count(8, StratumType::D0V), 24);
        for n in 4..=12 {
            residual_count(n); // internal identity assert
        }
    }

    #[test]
    fn residual_classification() {
        assert!(!classify_residual(StratumType::D0I));
        assert!(classify_residual(StratumType::D1III));
        assert!(!classify_residual(StratumType::D2III));
        let res: Vec<&str> = ALL_TYPES.iter().filter(|t| t.residual()).map(|t| t.label()).collect();
        assert_eq!(res, ["1III", "1IV", "0II", "0III", "0IV", "0V", "0VI"]);
    }

    #[test]
    fn incidence_rows() {
        let n = 7;
        // adjacent 0I vertex
        let v = StratumId::new(StratumType::D0I, &[2, 3], n);
        let inc = incidence_vertices(&v, n);
        assert_eq!(inc, vec![
            StratumId::new(StratumType::D1I, &[2], n),
            StratumId::new(StratumType::D1I, &[3], n),
            StratumId::new(StratumType::D1II, &[2, 3], n),
            StratumId::new(StratumType::D1II, &[3, 1], n),
        ]);
        // 0III row
        let v = StratumId::new(StratumType::D0III, &[1, 3], n);
        let inc = incidence_vertices(&v, n);
        assert_eq!(inc, vec![
            StratumId::new(StratumType::D1I, &[1], n),
            StratumId::new(StratumType::D1II, &[1, 3], n),
            StratumId::new(StratumType::D1III, &[1, 3], n),
        ]);
        // 0VI row: the four triples
        let v = StratumId::new(StratumType::D0VI, &[1, 3, 5, 7], 9);
        let inc = incidence_vertices(&v, 9);
        assert_eq!(inc.len(), 4);
        assert!(inc.iter().all(|s| s.ty == StratumType::D1IV));
    }

    #[test]
    fn vertex_points_satisfy_conditions() {
        let z = moment_curve_default(6);
        // 0I: the marked line itself
        let v = StratumId::new(StratumType::D0I, &[2, 5], 6);
        match vertex_point(&v, &z).unwrap() {
            VertexPoint::Point(p) => assert!(p.proj_eq(&z.line(2, 5))),
            _ => panic!(),
        }
        // 0III at n=6
        let v = StratumId::new(StratumType::D0III, &[1, 3], 6);
        match vertex_point(&v, &z).unwrap() {
            VertexPoint::Point(p) => {
                assert!(crate::grassmann::line_contains_point(&p, &z.point(1)).1);
                assert!(crate::grassmann::bracket_pq(&p, &z.line(6, 2)).is_zero());
                assert!(z.edge_bracket(&p, 3).is_zero());
            }
            _ => panic!(),
        }
        // every 0-dim stratum at n=6
        for info in enumerate_strata(6) {
            if info.id.dim() != 0 {
                continue;
            }
            match vertex_point(&info.id, &z).unwrap() {
                VertexPoint::Point(p) => {
                    assert!(satisfies_conditions(&info.id, &z, &p), "{:?}", info.id);
                    assert!(crate::grassmann::quadric_value(p.coords()).is_zero());
                }
                VertexPoint::Pencil { .. } => unreachable!("no 0VI strata at n=6"),
            }
        }
    }

    #[test]
    fn pencil_vertex_at_n8() {
        let z = moment_curve_default(8);
        let v = StratumId::new(StratumType::D0VI, &[1, 3, 5, 7], 8);
        match vertex_point(&v, &z).unwrap() {
            VertexPoint::Pencil { basis, quadratic, discriminant } => {
                // basis vectors satisfy the four bracket conditions
                for b in &basis {
                    for cond in v.schubert_conditions(8) {
                        let rows = schubert_rows(&cond, &z);
                        for r in 0..rows.rows() {
                            let val: Rat = (0..6).map(|c| &rows[(r, c)] * &b[c]).sum();
                            assert!(val.is_zero());
                        }
                    }
                }
                assert!(!quadratic.iter().all(|c| c.is_zero()));
                // two real transversals expected for a positive configuration
                assert!(discriminant.is_positive());
            }
            _ => panic!("expected a pencil"),
        }
    }

    #[test]
    fn kernel_dimension_of_vertex_systems() {
        // stacked 0II system at n=6 has a one-dimensional kernel, and the
        // exact rank agrees with a floating-point oracle
        let z = moment_curve_default(6);
        let id = StratumId::new(StratumType::D0II, &[1, 4], 6);
        let cond = conditions_matrix(&id, &z);
        assert_eq!(cond.kernel().len(), 1);
        assert_eq!(cond.rank(), 5);
        assert_eq!(float_rank(&cond), 5);
    }

    /// float row reduction, test oracle only
    fn float_rank(m: &QMatrix) -> usize {
        let mut a: Vec<Vec<f64>> = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|r| {
                        let n: f64 = r.numer().to_string().parse().unwrap();
                        let d: f64 = r.denom().to_string().parse().unwrap();
                        n / d
                    })
                    .collect()
            })
            .collect();
        let (rows, cols) = (a.len(), m.cols());
        let mut rank = 0;
        for c in 0..cols {
            let piv = (rank..rows).max_by(|&x, &y| a[x][c].abs().partial_cmp(&a[y][c].abs()).unwrap());
            match piv {
                Some(p) if a[p][c].abs() > 1e-9 => {
                    a.swap(rank, p);
                    for i in 0..rows {
                        if i != rank {
                            let f = a[i][c] / a[rank][c];
                            for j in 0..cols {
                                a[i][j] -= f * a[rank][j];
                            }
                        }
                    }
                    rank += 1;
                }
                _ => {}
            }
        }
        rank
    }

    #[test]
    fn residual_line_census() {
        for n in [6usize, 7] {
            let z = moment_curve_default(n);
            for id in enumerate_type(n, StratumType::D1III) {
                let param = residual_line_param(&id, &z).unwrap();
                // the point at infinity is the 0III vertex
                let inf = param.coeff_vector(1);
                let v0iii = StratumId::new(StratumType::D0III, &id.indices, n);
                match vertex_point(&v0iii, &z).unwrap() {
                    VertexPoint::Point(p) => {
                        let inf_p = Pluecker::from_slice(&inf).unwrap();
                        assert!(inf_p.proj_eq(&p), "{:?}", id);
                    }
                    _ => panic!(),
                }
                // each unmarked bracket restricts to an exact degree-1
                // polynomial with its own rational root; together with the
                // vertex at infinity that is n-2 residual vertices
                let mut roots = Vec::new();
                for m in 1..=n {
                    if param.marked.contains(&m) {
                        assert!(param
                            .restrict_covector(&bracket_covector(&z.edge_line(m as i64)))
                            .is_zero());
                        continue;
                    }
                    let r = param.restrict_covector(&bracket_covector(&z.edge_line(m as i64)));
                    assert_eq!(r.deg1(), Some(1), "{:?} bracket {m}", id);
                    roots.extend(r.rational_roots());
                }
                assert_eq!(roots.len(), n - 3);
                let set: std::collections::BTreeSet<_> = roots.iter().collect();
                assert_eq!(set.len(), n - 3, "roots must be distinct");
                assert_eq!(roots.len() + 1, n - 2);
            }
        }
    }

    #[test]
    fn residual_conic_census() {
        for n in [7usize, 8] {
            let z = moment_curve_default(n);
            for id in enumerate_type(n, StratumType::D1IV) {
                let param = residual_conic_param(&id, &z).unwrap();
                let i1 = cyc(n, id.indices[0] as i64 + 1);
                // marked brackets vanish at several parameter values (and in
                // fact identically, which verify_param already checked)
                for t in [0i64, 1, 2, 5] {
                    if let Some(p) = param.eval(&rat(t)) {
                        for &m in &param.marked {
                            assert!(z.edge_bracket(&p, m as i64).is_zero());
                        }
                    }
                }
                // degree count: 2 per unmarked bracket, with the bracket at
                // i+1 dropping one root to t = infinity (the transversal
                // through Z_{i+1}); total 2n - 6 residual vertices
                let mut total = 0;
                for m in 1..=n {
                    if param.marked.contains(&m) {
                        continue;
                    }
                    let r = param.restrict_covector(&bracket_covector(&z.edge_line(m as i64)));
                    let expected = if m == i1 { 1 } else { 2 };
                    assert_eq!(r.deg1(), Some(expected), "{:?} bracket {m}", id);
                    total += 2; // projective root count of the degree-2 restriction
                }
                assert_eq!(total, 2 * (n - 3));
                assert_eq!(2 * (n - 3), 2 * n - 6);
            }
        }
    }

    #[test]
    fn residual_kinds() {
        let n = 7;
        assert_eq!(residual_kind(&StratumId::new(StratumType::D1III, &[1, 3], n), n), Kind::First);
        assert_eq!(residual_kind(&StratumId::new(StratumType::D1III, &[1, 4], n), n), Kind::Second);
        assert_eq!(residual_kind(&StratumId::new(StratumType::D1IV, &[1, 3, 5], n), n), Kind::First);
        let n = 9;
        assert_eq!(residual_kind(&StratumId::new(StratumType::D1IV, &[1, 3, 6], n), n), Kind::Second);
        assert_eq!(residual_kind(&StratumId::new(StratumType::D1IV, &[1, 4, 7], n), n), Kind::Third);
    }

    #[test]
    fn one_skeleton_connectivity() {
        for n in [4usize, 5, 8] {
            let g = one_skeleton(n);
            assert_eq!(g.vertices.len(), n * (n - 1) / 2);
            assert!(g.connected, "n={n}");
        }
        // adjacent vertices have degree 4 at n=5
        let g = one_skeleton(5);
        for i in 1..=5usize {
            let v = if i < 5 { (i, i + 1) } else { (1, 5) };
            assert_eq!(g.degree(v), 4, "vertex {:?}", v);
        }
    }

    #[test]
    fn schubert_relation_consecutive_brackets() {
        // points satisfying a vertex or plane condition at i satisfy both
        // adjacent edge brackets
        let n = 6;
        let z = moment_curve_default(n);
        for i in 1..=n as i64 {
            // lines through Z_i
            for w in [z.point(i + 2), z.point(i + 3), PointP3::from_slice(&[rat(1), rat(2), rat(-1), rat(3)])] {
                if let Ok(l) = join_points(&z.point(i), &w) {
                    assert!(z.edge_bracket(&l, i - 1).is_zero());
                    assert!(z.edge_bracket(&l, i).is_zero());
                }
            }
            // lines inside the plane at i: pencil through two plane points
            let h = z.plane(i);
            let a = meet_line_plane(&z.line(i + 2, i + 3), &h).unwrap();
            for t in 1..=10i64 {
                let b = PointP3::affine_combo(&z.point(i), &rat(t), &z.point(i - 1));
                let l = join_points(&a, &b).unwrap();
                assert!(z.edge_bracket(&l, i - 1).is_zero());
                assert!(z.edge_bracket(&l, i).is_zero());
            }
        }
    }

    #[test]
    fn incidence_conditions_hold_at_vertices() {
        // every listed 1-stratum's Schubert conditions vanish at the vertex
        let n = 7;
        let z = moment_curve_default(n);
        for info in enumerate_strata(n) {
            if info.id.dim() != 0 {
                continue;
            }
            let incident = incidence_vertices(&info.id, n);
            match vertex_point(&info.id, &z).unwrap() {
                VertexPoint::Point(p) => {
                    for one_dim in &incident {
                        assert!(
                            satisfies_conditions(one_dim, &z, &p),
                            "vertex {:?} not on {:?}",
                            info.id,
                            one_dim
                        );
                    }
                }
                VertexPoint::Pencil { basis, .. } => {
                    for one_dim in &incident {
                        let m = conditions_matrix(one_dim, &z);
                        for b in &basis {
                            for r in 0..m.rows() {
                                let val: Rat = (0..6).map(|c| &m[(r, c)] * &b[c]).sum();
                                assert!(val.is_zero());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn line_param_vertex_on_curve_at_rational_t() {
        // the 0II vertex on the residual line (1,III,(1,4)) at n=6 sits at a
        // rational parameter value
        let n = 6;
        let z = moment_curve_default(n);
        let id = StratumId::new(StratumType::D1III, &[1, 4], n);
        let param = residual_line_param(&id, &z).unwrap();
        let v = StratumId::new(StratumType::D0II, &[1, 4], n);
        let VertexPoint::Point(p) = vertex_point(&v, &z).unwrap() else { panic!() };
        // solve the linear system param(t) ~ p on two coordinates, then verify
        let found = (1..=6)
            .flat_map(|num: i64| (1..=6).flat_map(move |den: i64| vec![crate::rat::ratio(num, den), crate::rat::ratio(-num, den)]))
            .chain([rat(0)])
            .find(|t| param.eval(t).is_some_and(|q| q.proj_eq(&p)));
        // brute scan is only a fallback; derive t directly from the bracket
        // that cuts this vertex: it is the root of the restricted bracket 5
        let r = param.restrict_covector(&bracket_covector(&z.edge_line(5)));
        let roots = r.rational_roots();
        let hit = roots.iter().any(|t| param.eval(t).is_some_and(|q| q.proj_eq(&p)));
        assert!(hit || found.is_some());
    }
}
