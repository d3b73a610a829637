//! The adjoint hypersurface: the unique (up to scale) degree n-4 element of
//! the coordinate ring of Gr(2,4) vanishing on the residual arrangement.
//!
//! The coordinate ring modulo the Plücker relation has a normal-form monomial
//! basis: all monomials not divisible by p13*p24, with the rewrite
//! p13*p24 -> p12*p34 + p14*p23. Interpolation conditions are imposed by
//! sampling rational points on the residual lines and conics; vanishing at
//! n-3 points of a line (2n-7 of a conic) forces vanishing along the whole
//! curve by the degree bound.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grassmann::{primitive_vector, Pluecker};
use crate::matrix::QMatrix;
use crate::poly::{Exp, PolyQ};
use crate::rat::Rat;
use crate::strata::{
    enumerate_type, residual_conic_param, residual_line_param, vertex_point, CurveParam,
    StratumType, VertexPoint,
};
use crate::zinput::ZMatrix;

/// Monomial basis of the degree-d part of the coordinate ring.
#[derive(Debug, Clone)]
pub struct GrBasis {
    pub degree: u32,
    monomials: Vec<Exp>,
    position: HashMap<Exp, usize>,
}

impl GrBasis {
    pub fn monomials(&self) -> &[Exp] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, e: &Exp) -> Option<usize> {
        self.position.get(e).copied()
    }
}

/// Expected dimension: C(d+5,5) - C(d+3,5).
pub fn ring_dimension(d: u32) -> usize {
    let b = |n: i64, k: i64| -> i64 {
        if n < k || k < 0 {
            return 0;
        }
        (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
    };
    (b(d as i64 + 5, 5) - b(d as i64 + 3, 5)) as usize
}

/// All degree-d monomials in the six Plücker variables not divisible by
/// p13*p24, in descending lexicographic order.
pub fn gr_basis(d: u32) -> GrBasis {
    let mut monomials = Vec::new();
    let mut e: Exp = [0; 6];
    fn rec(pos: usize, left: u32, e: &mut Exp, out: &mut Vec<Exp>) {
        if pos == 5 {
            e[5] = left;
            if !(e[1] >= 1 && e[4] >= 1) {
                out.push(*e);
            }
            return;
        }
        for v in 0..=left {
            e[pos] = v;
            rec(pos + 1, left - v, e, out);
        }
        e[pos] = 0;
    }
    rec(0, d, &mut e, &mut monomials);
    monomials.sort_unstable_by(|a, b| b.cmp(a));
    let position = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let basis = GrBasis { degree: d, monomials, position };
    debug_assert_eq!(basis.len(), ring_dimension(d));
    basis
}

/// Rewrite to normal form: p13*p24 -> p12*p34 + p14*p23 until no monomial is
/// divisible by p13*p24. Linear, degree-preserving, terminating.
pub fn normal_form(p: &PolyQ) -> PolyQ {
    assert_eq!(p.nvars(), 6);
    let mut cur = p.clone();
    loop {
        let mut next = PolyQ::zero(6);
        let mut rewrote = false;
        for (e, c) in cur.terms() {
            if e[1] >= 1 && e[4] >= 1 {
                rewrote = true;
                let mut a = *e;
                a[1] -= 1;
                a[4] -= 1;
                let mut t1 = a;
                t1[0] += 1;
                t1[5] += 1;
                let mut t2 = a;
                t2[2] += 1;
                t2[3] += 1;
                next = next.add(&PolyQ::monomial(6, t1, c.clone()));
                next = next.add(&PolyQ::monomial(6, t2, c.clone()));
            } else {
                next = next.add(&PolyQ::monomial(6, *e, c.clone()));
            }
        }
        cur = next;
        if !rewrote {
            return cur;
        }
    }
}

/// Coefficient vector of a homogeneous polynomial over the normal-form basis
/// of its degree.
pub fn reduce_mod_pluecker(p: &PolyQ) -> Result<Vec<Rat>> {
    if !p.is_homogeneous() {
        return Err(Error::InvalidInput("reduction needs a homogeneous polynomial".into()));
    }
    let d = p.total_degree().unwrap_or(0);
    let basis = gr_basis(d);
    let nf = normal_form(p);
    let mut coeffs = vec![Rat::zero(); basis.len()];
    for (e, c) in nf.terms() {
        let pos = basis
            .position(e)
            .expect("normal form lies in the standard-monomial basis");
        coeffs[pos] = c.clone();
    }
    Ok(coeffs)
}

/// The adjoint polynomial as a coefficient vector over the basis of R_{n-4}.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjointPoly {
    pub basis: GrBasis,
    pub coeffs: Vec<Rat>,
}

impl PartialEq<GrBasis> for GrBasis {
    fn eq(&self, other: &GrBasis) -> bool {
        self.degree == other.degree
    }
}

impl AdjointPoly {
    pub fn degree(&self) -> u32 {
        self.basis.degree
    }

    pub fn as_poly(&self) -> PolyQ {
        let mut p = PolyQ::zero(6);
        for (m, c) in self.basis.monomials().iter().zip(&self.coeffs) {
            p = p.add(&PolyQ::monomial(6, *m, c.clone()));
        }
        p
    }

    pub fn eval(&self, p: &Pluecker) -> Rat {
        self.as_poly().eval(p.coords().as_slice())
    }

    /// First nonzero coefficient scaled to one.
    pub fn normalized(&self) -> AdjointPoly {
        let lead = self.coeffs.iter().find(|c| !c.is_zero()).cloned();
        match lead {
            None => self.clone(),
            Some(l) => AdjointPoly {
                basis: self.basis.clone(),
                coeffs: self.coeffs.iter().map(|c| c / &l).collect(),
            },
        }
    }

    pub fn proportional_to(&self, other: &AdjointPoly) -> bool {
        self.normalized().coeffs == other.normalized().coeffs
    }
}

/// The assembled interpolation system together with the parameters used per
/// curve (so verification can draw fresh ones).
pub struct ConstraintSystem {
    pub matrix: QMatrix,
    pub curves: Vec<(CurveParam, Vec<Rat>)>,
    pub basis: GrBasis,
}

fn curve_params(z: &ZMatrix) -> Result<Vec<CurveParam>> {
    let n = z.n();
    let mut curves = Vec::new();
    for id in enumerate_type(n, StratumType::D1III) {
        curves.push(residual_line_param(&id, z)?);
    }
    for id in enumerate_type(n, StratumType::D1IV) {
        curves.push(residual_conic_param(&id, z)?);
    }
    Ok(curves)
}

fn evaluation_row(basis: &GrBasis, p: &Pluecker) -> Vec<Rat> {
    let coords = p.coords();
    basis
        .monomials()
        .iter()
        .map(|e| {
            let mut acc = Rat::one();
            for (k, &ek) in e.iter().enumerate() {
                for _ in 0..ek {
                    acc *= &coords[k];
                }
            }
            acc
        })
        .collect()
}

/// One row per sample point on each residual curve: n-3 points per line,
/// 2n-7 per conic; vanishing on the samples forces vanishing on the curves.
pub fn assemble_constraints(z: &ZMatrix) -> Result<ConstraintSystem> {
    z.require_generic()?;
    let n = z.n();
    if n < 5 {
        // empty residual arrangement
        return Ok(ConstraintSystem {
            matrix: QMatrix::zeros(0, 1),
            curves: Vec::new(),
            basis: gr_basis(0),
        });
    }
    let basis = gr_basis(n as u32 - 4);
    let mut curves = Vec::new();
    for param in curve_params(z)? {
        let count = if param.component_degree == 1 { n - 3 } else { 2 * n - 7 };
        let samples = param.sample(count, &[])?;
        curves.push((param, samples));
    }
    let rows: Vec<Vec<Rat>> = curves
        .par_iter()
        .flat_map(|(_, samples)| {
            samples
                .par_iter()
                .map(|(_, p)| evaluation_row(&basis, p))
                .collect::<Vec<_>>()
        })
        .collect();
    let matrix = QMatrix::from_rows(rows);
    let curves = curves
        .into_iter()
        .map(|(param, samples)| (param, samples.into_iter().map(|(t, _)| t).collect()))
        .collect();
    Ok(ConstraintSystem { matrix, curves, basis })
}

/// Solve for the unique adjoint: the interpolation kernel must be exactly
/// one-dimensional. The result is verified on fresh curve samples and checked
/// to be nonzero on every 0I boundary vertex.
pub fn solve_adjoint(z: &ZMatrix) -> Result<AdjointPoly> {
    z.require_generic()?;
    let n = z.n();
    let system = assemble_constraints(z)?;
    let adjoint = if n == 4 {
        AdjointPoly { basis: system.basis, coeffs: vec![Rat::one()] }
    } else {
        let kernel = system.matrix.kernel();
        if kernel.len() != 1 {
            return Err(Error::KernelDimension { expected: 1, got: kernel.len() });
        }
        let coeffs = kernel[0].col_vec(0);
        AdjointPoly { basis: system.basis, coeffs }.normalized()
    };
    // fresh-sample verification: three extra points per curve
    let poly = adjoint.as_poly();
    for (param, used) in &system.curves {
        for (_, p) in param.sample(3, used)? {
            if !poly.eval(p.coords().as_slice()).is_zero() {
                return Err(Error::Inconsistent("adjoint fails to vanish on a fresh residual sample".into()));
            }
        }
    }
    // nonvanishing at the boundary vertices
    for id in enumerate_type(n, StratumType::D0I) {
        if let VertexPoint::Point(p) = vertex_point(&id, z)? {
            if adjoint.eval(&p).is_zero() {
                return Err(Error::Inconsistent(format!(
                    "adjoint vanishes at boundary vertex {:?}",
                    id.indices
                )));
            }
        }
    }
    Ok(adjoint)
}

/// Closed-form recipe at n = 5: prescribe the values of the linear form on
/// all ten marked lines as products of maximal minors, then solve the
/// (consistent, overdetermined) 10 x 6 system given by the second compound
/// matrix of Z.
pub fn adjoint_n5_closed_form(z: &ZMatrix) -> Result<AdjointPoly> {
    if z.n() != 5 {
        return Err(Error::InvalidInput("closed form is specific to n = 5".into()));
    }
    let mut rows = Vec::with_capacity(10);
    let mut rhs = Vec::with_capacity(10);
    for i in 1..=5i64 {
        for j in i + 1..=5 {
            rows.push(z.line(i, j).coords().to_vec());
            let mut c = Rat::one();
            for k in 1..=5i64 {
                if k != i && k != j {
                    // delete row k: the remaining rows in increasing order
                    let sel: Vec<i64> = (1..=5).filter(|&r| r != k).collect();
                    c *= z.minor4([sel[0], sel[1], sel[2], sel[3]]);
                }
            }
            rhs.push(c);
        }
    }
    let m = QMatrix::from_rows(rows);
    let d = m
        .solve_unique(&rhs)
        .map_err(|_| Error::Inconsistent("compound-matrix system is inconsistent".into()))?;
    let basis = gr_basis(1);
    // d is indexed by Plücker positions; basis order is descending lex
    let mut coeffs = vec![Rat::zero(); basis.len()];
    for (pos, coeff) in d.into_iter().enumerate() {
        let mut e: Exp = [0; 6];
        e[pos] = 1;
        coeffs[basis.position(&e).unwrap()] = coeff;
    }
    Ok(AdjointPoly { basis, coeffs })
}

/// Adjoint curve of a convex polygon in the plane: the unique degree
/// (#edges - 3) curve through the pairwise intersections of non-adjacent
/// edge lines. Homogeneous in (x, y, z).
#[derive(Debug, Clone)]
pub struct PolygonAdjoint {
    pub poly: PolyQ,
    pub edges: Vec<[Rat; 3]>,
    pub residual_points: Vec<[Rat; 3]>,
}

fn cross3(a: &[Rat; 3], b: &[Rat; 3]) -> [Rat; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn proj_eq3(a: &[Rat; 3], b: &[Rat; 3]) -> bool {
    (0..3).all(|i| (i + 1..3).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

pub fn polygon_adjoint_2d(vertices: &[(Rat, Rat)]) -> Result<PolygonAdjoint> {
    let ne = vertices.len();
    if ne < 3 {
        return Err(Error::InvalidInput("polygon needs at least 3 vertices".into()));
    }
    let pts: Vec<[Rat; 3]> = vertices
        .iter()
        .map(|(x, y)| [x.clone(), y.clone(), Rat::one()])
        .collect();
    let edges: Vec<[Rat; 3]> = (0..ne)
        .map(|i| cross3(&pts[i], &pts[(i + 1) % ne]))
        .collect();
    if edges.iter().any(|e| e.iter().all(|c| c.is_zero())) {
        return Err(Error::Degenerate("repeated polygon vertex".into()));
    }
    // residual points: intersections of non-adjacent edge lines
    let mut residual_points: Vec<[Rat; 3]> = Vec::new();
    for a in 0..ne {
        for b in a + 1..ne {
            let adjacent = b == a + 1 || (a == 0 && b == ne - 1);
            if adjacent {
                continue;
            }
            let q = cross3(&edges[a], &edges[b]);
            if q.iter().all(|c| c.is_zero()) {
                return Err(Error::Degenerate("two edges lie on one line".into()));
            }
            if pts.iter().any(|v| proj_eq3(v, &q)) {
                return Err(Error::Degenerate("edge lines meet at a polygon vertex".into()));
            }
            if !residual_points.iter().any(|r| proj_eq3(r, &q)) {
                residual_points.push(q);
            }
        }
    }
    let deg = ne as u32 - 3;
    if deg == 0 {
        return Ok(PolygonAdjoint { poly: PolyQ::one(3), edges, residual_points });
    }
    // monomial basis of degree `deg` in (x, y, z), descending lex
    let mut monos: Vec<Exp> = Vec::new();
    for ex in 0..=deg {
        for ey in 0..=(deg - ex) {
            let mut e: Exp = [0; 6];
            e[0] = ex;
            e[1] = ey;
            e[2] = deg - ex - ey;
            monos.push(e);
        }
    }
    monos.sort_unstable_by(|a, b| b.cmp(a));
    let rows: Vec<Vec<Rat>> = residual_points
        .iter()
        .map(|q| {
            let qv = primitive_vector(q);
            monos
                .iter()
                .map(|e| {
                    let mut acc = Rat::one();
                    for k in 0..3 {
                        for _ in 0..e[k] {
                            acc *= &qv[k];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let m = QMatrix::from_rows(rows);
    let kernel = m.kernel();
    if kernel.len() != 1 {
        return Err(Error::KernelDimension { expected: 1, got: kernel.len() });
    }
    let coeffs = kernel[0].col_vec(0);
    let mut poly = PolyQ::zero(3);
    for (e, c) in monos.iter().zip(coeffs) {
        poly = poly.add(&PolyQ::monomial(3, *e, c));
    }
    Ok(PolygonAdjoint { poly, edges, residual_points })
}
