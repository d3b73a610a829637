//! Lines in P^3: Plücker coordinates, brackets, incidence conditions,
//! join/meet, and affine charts on the Plücker quadric.
//!
//! Plücker entries are indexed (12,13,14,23,24,34) = positions 0..5. The
//! Hodge dual uses the sign table
//! `star(p) = (p34, -p24, p23, p14, -p13, p12)`,
//! so that the pairing `p . star(q)` expands the 4x4 determinant with
//! columns (A, B, Zi, Zj), and a vector lies on the quadric iff
//! `p . star(p) = 0` (twice the Plücker relation). Incidence conventions:
//! a point z lies on the line iff `P*(p) z = 0`, a line lies in a plane h
//! iff `P(p) h = 0`, where `P` is the primal antisymmetric matrix and `P*`
//! its dual.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::rat::{format_rat, Rat};

/// Row-index pairs (0-based) behind positions 0..5.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Complementary-pair signs of the Plücker relation p0*p5 - p1*p4 + p2*p3 = 0.
const PAIR_SIGN: [i64; 6] = [1, -1, 1, 1, -1, 1];

pub const CHART_LABELS: [&str; 6] = ["p12", "p13", "p14", "p23", "p24", "p34"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointP3(pub [Rat; 4]);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneP3(pub [Rat; 4]);

impl PointP3 {
    pub fn from_slice(v: &[Rat]) -> Self {
        PointP3([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// a + t*b
    pub fn affine_combo(a: &PointP3, t: &Rat, b: &PointP3) -> PointP3 {
        PointP3(std::array::from_fn(|k| &a.0[k] + t * &b.0[k]))
    }

    pub fn proj_eq(&self, other: &PointP3) -> bool {
        proj_eq_slices(&self.0, &other.0)
    }
}

impl PlaneP3 {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn eval(&self, z: &PointP3) -> Rat {
        (0..4).map(|k| &self.0[k] * &z.0[k]).sum()
    }
}

fn proj_eq_slices(a: &[Rat], b: &[Rat]) -> bool {
    let za = a.iter().all(|x| x.is_zero());
    let zb = b.iter().all(|x| x.is_zero());
    if za || zb {
        return za && zb;
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

/// A point of Gr(2,4) in P^5: nonzero and on the Plücker quadric.
#[derive(Debug, Clone)]
pub struct Pluecker {
    p: [Rat; 6],
}

impl Pluecker {
    pub fn new(p: [Rat; 6]) -> Result<Pluecker> {
        if p.iter().all(|x| x.is_zero()) {
            return Err(Error::InvalidInput("zero Plücker vector".into()));
        }
        if !quadric_value(&p).is_zero() {
            return Err(Error::InvalidInput(format!(
                "Plücker relation violated: p12*p34 - p13*p24 + p14*p23 = {}",
                format_rat(&quadric_value(&p))
            )));
        }
        Ok(Pluecker { p })
    }

    pub fn from_slice(v: &[Rat]) -> Result<Pluecker> {
        Pluecker::new(std::array::from_fn(|k| v[k].clone()))
    }

    pub fn coords(&self) -> &[Rat; 6] {
        &self.p
    }

    pub fn proj_eq(&self, other: &Pluecker) -> bool {
        proj_eq_slices(&self.p, &other.p)
    }

    /// Integer representative with content one and first nonzero entry positive.
    pub fn primitive(&self) -> Pluecker {
        let v = primitive_vector(&self.p);
        Pluecker { p: std::array::from_fn(|k| v[k].clone()) }
    }

    /// Primal antisymmetric matrix P with P[k][l] = p_kl for k < l.
    pub fn primal_matrix(&self) -> QMatrix {
        let mut m = QMatrix::zeros(4, 4);
        for (pos, &(k, l)) in PAIRS.iter().enumerate() {
            m[(k, l)] = self.p[pos].clone();
            m[(l, k)] = -self.p[pos].clone();
        }
        m
    }

    /// Hodge-dual antisymmetric matrix.
    pub fn dual_matrix(&self) -> QMatrix {
        let s = star(&self.p);
        let mut m = QMatrix::zeros(4, 4);
        for (pos, &(k, l)) in PAIRS.iter().enumerate() {
            m[(k, l)] = s[pos].clone();
            m[(l, k)] = -s[pos].clone();
        }
        m
    }

    /// Some 2x4 matrix whose row span is the line (two independent columns of
    /// the primal matrix, transposed).
    pub fn representative(&self) -> QMatrix {
        let pm = self.primal_matrix();
        let mut cols = Vec::new();
        for j in 0..4 {
            let col = pm.col_vec(j);
            if col.iter().any(|x| !x.is_zero()) {
                cols.push(col);
            }
            if cols.len() == 2 {
                let m = QMatrix::from_rows(cols);
                if m.rank() == 2 {
                    return m;
                }
                cols = vec![m.row(0).to_vec()];
            }
        }
        unreachable!("a nonzero decomposable Plücker vector has a rank-2 primal matrix")
    }
}

pub fn quadric_value(p: &[Rat; 6]) -> Rat {
    &p[0] * &p[5] - &p[1] * &p[4] + &p[2] * &p[3]
}

pub fn star(p: &[Rat; 6]) -> [Rat; 6] {
    [
        p[5].clone(),
        -p[4].clone(),
        p[3].clone(),
        p[2].clone(),
        -p[1].clone(),
        p[0].clone(),
    ]
}

/// Scale a rational vector to a primitive integer vector, first nonzero positive.
pub fn primitive_vector(v: &[Rat]) -> Vec<Rat> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for e in v {
        lcm = lcm.lcm(e.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|e| e.numer() * (&lcm / e.denom())).collect();
    let mut g = BigInt::zero();
    for e in &ints {
        g = g.gcd(e);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let mut out: Vec<Rat> = ints.into_iter().map(|e| Rat::from_integer(e / &g)).collect();
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for e in &mut out {
                *e = -e.clone();
            }
        }
    }
    out
}

/// Plücker coordinates of the row span of a 2x4 matrix: the six 2x2 minors
/// in position order.
pub fn pluecker_from_matrix(x: &QMatrix) -> Result<Pluecker> {
    if x.rows() != 2 || x.cols() != 4 {
        return Err(Error::Dimension(format!("expected 2x4, got {}x{}", x.rows(), x.cols())));
    }
    let p: [Rat; 6] = std::array::from_fn(|pos| {
        let (k, l) = PAIRS[pos];
        &x[(0, k)] * &x[(1, l)] - &x[(0, l)] * &x[(1, k)]
    });
    if p.iter().all(|c| c.is_zero()) {
        return Err(Error::RankCollapse);
    }
    Pluecker::new(p)
}

/// The line through two distinct points.
pub fn join_points(a: &PointP3, b: &PointP3) -> Result<Pluecker> {
    let p: [Rat; 6] = std::array::from_fn(|pos| {
        let (k, l) = PAIRS[pos];
        &a.0[k] * &b.0[l] - &a.0[l] * &b.0[k]
    });
    if p.iter().all(|c| c.is_zero()) {
        return Err(Error::Degenerate("join of projectively equal points".into()));
    }
    Pluecker::new(p)
}

/// The plane spanned by a line and a point off it: P*(p) z.
pub fn join_line_point(l: &Pluecker, z: &PointP3) -> Result<PlaneP3> {
    let m = l.dual_matrix();
    let h: [Rat; 4] = std::array::from_fn(|k| (0..4).map(|j| &m[(k, j)] * &z.0[j]).sum());
    if h.iter().all(|c| c.is_zero()) {
        return Err(Error::Degenerate("point lies on the line; join is not a plane".into()));
    }
    Ok(PlaneP3(h))
}

/// The intersection line of two distinct planes.
pub fn meet_planes(h1: &PlaneP3, h2: &PlaneP3) -> Result<Pluecker> {
    let d: [Rat; 6] = std::array::from_fn(|pos| {
        let (k, l) = PAIRS[pos];
        &h1.0[k] * &h2.0[l] - &h1.0[l] * &h2.0[k]
    });
    let p = star(&d);
    if p.iter().all(|c| c.is_zero()) {
        return Err(Error::Degenerate("meet of projectively equal planes".into()));
    }
    Pluecker::new(p)
}

/// The intersection point of a line with a plane not containing it: P(p) h.
pub fn meet_line_plane(l: &Pluecker, h: &PlaneP3) -> Result<PointP3> {
    let m = l.primal_matrix();
    let z: [Rat; 4] = std::array::from_fn(|k| (0..4).map(|j| &m[(k, j)] * &h.0[j]).sum());
    if z.iter().all(|c| c.is_zero()) {
        return Err(Error::Degenerate("line lies in the plane; meet is not a point".into()));
    }
    Ok(PointP3(z))
}

/// Plane through three points, as the covector h with h.x = det(x, a, b, c).
pub fn plane_through_points(a: &PointP3, b: &PointP3, c: &PointP3) -> Result<PlaneP3> {
    let l = join_points(a, b)?;
    join_line_point(&l, c)
}

/// Pairing of two Plücker vectors; for q = Zi v Zj this is the bracket
/// <AB i j> = det(A | B | Zi | Zj).
pub fn bracket_pq(p: &Pluecker, q: &Pluecker) -> Rat {
    let s = star(q.coords());
    (0..6).map(|k| &p.coords()[k] * &s[k]).sum()
}

/// Bracket against two explicit points.
pub fn bracket(ab: &Pluecker, zi: &PointP3, zj: &PointP3) -> Rat {
    match join_points(zi, zj) {
        Ok(q) => bracket_pq(ab, &q),
        Err(_) => Rat::zero(), // coincident points: degenerate determinant
    }
}

/// Covector row c with c . p = <p, q> for the fixed line q.
pub fn bracket_covector(q: &Pluecker) -> Vec<Rat> {
    star(q.coords()).to_vec()
}

/// Linear conditions on p in R^6 expressing "the point z lies on the line":
/// four covector rows of rank three.
pub fn point_conditions(z: &PointP3) -> QMatrix {
    let zz = &z.0;
    let zero = Rat::zero;
    QMatrix::from_rows(vec![
        vec![zero(), zero(), zero(), zz[3].clone(), -zz[2].clone(), zz[1].clone()],
        vec![zero(), -zz[3].clone(), zz[2].clone(), zero(), zero(), -zz[0].clone()],
        vec![zz[3].clone(), zero(), -zz[1].clone(), zero(), zz[0].clone(), zero()],
        vec![-zz[2].clone(), zz[1].clone(), zero(), -zz[0].clone(), zero(), zero()],
    ])
}

/// Linear conditions on p expressing "the line lies in the plane h":
/// four covector rows of rank three.
pub fn plane_conditions(h: &PlaneP3) -> QMatrix {
    let hh = &h.0;
    let zero = Rat::zero;
    QMatrix::from_rows(vec![
        vec![hh[1].clone(), hh[2].clone(), hh[3].clone(), zero(), zero(), zero()],
        vec![-hh[0].clone(), zero(), zero(), hh[2].clone(), hh[3].clone(), zero()],
        vec![zero(), -hh[0].clone(), zero(), -hh[1].clone(), zero(), hh[3].clone()],
        vec![zero(), zero(), -hh[0].clone(), zero(), -hh[1].clone(), -hh[2].clone()],
    ])
}

fn conditions_vanish(cond: &QMatrix, p: &Pluecker) -> bool {
    (0..cond.rows()).all(|i| {
        (0..6)
            .map(|j| &cond[(i, j)] * &p.coords()[j])
            .sum::<Rat>()
            .is_zero()
    })
}

/// Incidence test with the defining conditions attached.
pub fn line_contains_point(ab: &Pluecker, z: &PointP3) -> (QMatrix, bool) {
    let c = point_conditions(z);
    let ok = conditions_vanish(&c, ab);
    (c, ok)
}

pub fn line_in_plane(ab: &Pluecker, h: &PlaneP3) -> (QMatrix, bool) {
    let c = plane_conditions(h);
    let ok = conditions_vanish(&c, ab);
    (c, ok)
}

/// Affine chart p_pivot = 1 on the quadric. The complementary coordinate is
/// recovered from the Plücker relation; the remaining four are the chart
/// coordinates, in position order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chart {
    pivot: usize,
}

impl Chart {
    pub fn new(pivot: usize) -> Chart {
        assert!(pivot < 6);
        Chart { pivot }
    }

    pub fn all() -> [Chart; 6] {
        std::array::from_fn(Chart::new)
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn dependent(&self) -> usize {
        5 - self.pivot
    }

    pub fn label(&self) -> &'static str {
        CHART_LABELS[self.pivot]
    }

    /// The four free positions in increasing order.
    pub fn free_positions(&self) -> [usize; 4] {
        let mut out = [0usize; 4];
        let mut k = 0;
        for pos in 0..6 {
            if pos != self.pivot && pos != self.dependent() {
                out[k] = pos;
                k += 1;
            }
        }
        out
    }

    pub fn contains(&self, p: &Pluecker) -> bool {
        !p.coords()[self.pivot].is_zero()
    }

    pub fn coords(&self, p: &Pluecker) -> Result<[Rat; 4]> {
        let piv = &p.coords()[self.pivot];
        if piv.is_zero() {
            return Err(Error::ChartMismatch);
        }
        let free = self.free_positions();
        Ok(std::array::from_fn(|k| &p.coords()[free[k]] / piv))
    }

    /// The dependent coordinate as a quadratic polynomial in the chart
    /// variables: solve the Plücker relation with p_pivot = 1.
    pub fn dependent_poly(&self) -> crate::poly::PolyQ {
        use crate::poly::PolyQ;
        let free = self.free_positions();
        let var_of = |pos: usize| free.iter().position(|&f| f == pos).unwrap();
        let e_pivot = Rat::from_integer(PAIR_SIGN[self.pivot].into());
        let mut acc = PolyQ::zero(4);
        for pair in [(0usize, 5usize), (1, 4), (2, 3)] {
            if pair.0 == self.pivot || pair.1 == self.pivot {
                continue;
            }
            let s = Rat::from_integer(PAIR_SIGN[pair.0].into());
            let term = PolyQ::var(4, var_of(pair.0))
                .mul(&PolyQ::var(4, var_of(pair.1)))
                .scale(&(-&e_pivot * s));
            acc = acc.add(&term);
        }
        acc
    }

    pub fn from_coords(&self, x: &[Rat; 4]) -> Pluecker {
        let free = self.free_positions();
        let dep = self.dependent_poly().eval(x.as_slice());
        let mut p: [Rat; 6] = std::array::from_fn(|_| Rat::zero());
        p[self.pivot] = Rat::one();
        for (k, &pos) in free.iter().enumerate() {
            p[pos] = x[k].clone();
        }
        p[self.dependent()] = dep;
        Pluecker::new(p).expect("chart reconstruction satisfies the Plücker relation")
    }

    /// Pull a polynomial in the six Plücker variables back to the chart:
    /// substitute p_pivot = 1 and the dependent coordinate by its quadric
    /// expression.
    pub fn pullback(&self, poly6: &crate::poly::PolyQ) -> crate::poly::PolyQ {
        use crate::poly::PolyQ;
        assert_eq!(poly6.nvars(), 6);
        let free = self.free_positions();
        let mut subs: Vec<PolyQ> = Vec::with_capacity(6);
        for pos in 0..6 {
            if pos == self.pivot {
                subs.push(PolyQ::one(4));
            } else if pos == self.dependent() {
                subs.push(self.dependent_poly());
            } else {
                let k = free.iter().position(|&f| f == pos).unwrap();
                subs.push(PolyQ::var(4, k));
            }
        }
        poly6.compose(&subs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn pt(v: [i64; 4]) -> PointP3 {
        PointP3(std::array::from_fn(|k| rat(v[k])))
    }

    fn e(i: usize) -> PointP3 {
        let mut v = [0i64; 4];
        v[i] = 1;
        pt(v)
    }

    fn line_e12() -> Pluecker {
        join_points(&e(0), &e(1)).unwrap()
    }

    #[test]
    fn pluecker_from_matrix_examples() {
        let m = QMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let p = pluecker_from_matrix(&m).unwrap();
        assert_eq!(p.coords()[0], rat(1));
        assert!(p.coords()[1..].iter().all(|c| c.is_zero()));

        let m = QMatrix::from_i64(&[&[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let p = pluecker_from_matrix(&m).unwrap();
        assert_eq!(p.coords()[5], rat(1));
        assert!(p.coords()[..5].iter().all(|c| c.is_zero()));

        let m = QMatrix::from_i64(&[&[1, 1, 1, 1], &[1, 2, 3, 4]]);
        let p = pluecker_from_matrix(&m).unwrap();
        let expect = [1i64, 2, 3, 1, 2, 1];
        for k in 0..6 {
            assert_eq!(p.coords()[k], rat(expect[k]));
        }

        // rank < 2
        let m = QMatrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8]]);
        assert!(matches!(pluecker_from_matrix(&m), Err(Error::RankCollapse)));
    }

    #[test]
    fn relation_enforced_on_construction() {
        let bad: [Rat; 6] = std::array::from_fn(|k| rat([2, 2, 2, 2, 2, 1][k]));
        assert!(Pluecker::new(bad).is_err());
        let zero: [Rat; 6] = std::array::from_fn(|_| rat(0));
        assert!(Pluecker::new(zero).is_err());
    }

    #[test]
    fn bracket_examples() {
        // identity columns
        let q34 = join_points(&e(2), &e(3)).unwrap();
        assert_eq!(bracket_pq(&line_e12(), &q34), rat(1));
        // coplanar degeneracy: the line against its own spanning points
        let z1 = pt([1, 1, 1, 1]);
        let z2 = pt([1, 2, 3, 4]);
        let l = join_points(&z1, &z2).unwrap();
        assert_eq!(bracket(&l, &z1, &z2), rat(0));
        // antisymmetry
        let z3 = pt([1, 3, 9, 27]);
        let z4 = pt([2, 1, 0, 5]);
        assert_eq!(bracket(&l, &z3, &z4), -bracket(&l, &z4, &z3));
    }

    #[test]
    fn bracket_agrees_with_det4() {
        // moment curve rows 1..4; line through Z1, Z2
        let z: Vec<PointP3> = (1..=4).map(|t: i64| pt([1, t, t * t, t * t * t])).collect();
        let l = join_points(&z[0], &z[1]).unwrap();
        let b = bracket(&l, &z[2], &z[3]);
        // det with columns Z1 Z2 Z3 Z4 = Vandermonde(1,2,3,4) = 12
        let cols = QMatrix::from_rows(
            (0..4)
                .map(|r| (0..4).map(|c| z[c].0[r].clone()).collect())
                .collect(),
        );
        assert_eq!(cols.det4().unwrap(), rat(12));
        assert_eq!(b, rat(12));
    }

    #[test]
    fn containment_conditions() {
        let (c, ok) = line_contains_point(&line_e12(), &e(0));
        assert!(ok);
        assert_eq!(c.rank(), 3);
        let (_, ok) = line_contains_point(&line_e12(), &e(2));
        assert!(!ok);

        let z1 = pt([1, 1, 1, 1]);
        let z2 = pt([1, 2, 3, 4]);
        let l = join_points(&z1, &z2).unwrap();
        let (_, ok) = line_contains_point(&l, &pt([0, 1, 2, 3]));
        assert!(ok);

        // containment forces all brackets through the point to vanish
        let w = pt([5, -1, 2, 7]);
        assert_eq!(bracket(&l, &pt([0, 1, 2, 3]), &w), rat(0));
    }

    #[test]
    fn plane_conditions_examples() {
        let x4 = PlaneP3([rat(0), rat(0), rat(0), rat(1)]);
        let x1 = PlaneP3([rat(1), rat(0), rat(0), rat(0)]);
        let (c, ok) = line_in_plane(&line_e12(), &x4);
        assert!(ok);
        assert_eq!(c.rank(), 3);
        let (_, ok) = line_in_plane(&line_e12(), &x1);
        assert!(!ok);

        // line Z1Z2 inside plane Z1 v Z2 v Z3 (moment curve)
        let z: Vec<PointP3> = (1..=3).map(|t: i64| pt([1, t, t * t, t * t * t])).collect();
        let l = join_points(&z[0], &z[1]).unwrap();
        let h = plane_through_points(&z[0], &z[1], &z[2]).unwrap();
        let (_, ok) = line_in_plane(&l, &h);
        assert!(ok);
    }

    #[test]
    fn join_meet_round_trips() {
        assert!(line_e12().proj_eq(&join_points(&e(0), &e(1)).unwrap()));
        let h3 = PlaneP3([rat(0), rat(0), rat(1), rat(0)]);
        let h4 = PlaneP3([rat(0), rat(0), rat(0), rat(1)]);
        assert!(meet_planes(&h3, &h4).unwrap().proj_eq(&line_e12()));

        // (line Z3Z4) meet (plane Z1Z2Z3) is a point on both
        let z: Vec<PointP3> = (1..=4).map(|t: i64| pt([1, t, t * t, t * t * t])).collect();
        let l34 = join_points(&z[2], &z[3]).unwrap();
        let h123 = plane_through_points(&z[0], &z[1], &z[2]).unwrap();
        let q = meet_line_plane(&l34, &h123).unwrap();
        assert!(line_contains_point(&l34, &q).1);
        assert!(h123.eval(&q).is_zero());
        // q = Z3 + multiple of Z4 (it is on the line Z3Z4); also check it is
        // not Z4 itself
        assert!(!q.proj_eq(&z[3]));

        // degenerate inputs error
        assert!(join_points(&e(0), &e(0)).is_err());
        assert!(join_line_point(&line_e12(), &e(0)).is_err());
        assert!(meet_line_plane(&line_e12(), &h4).is_err());
    }

    #[test]
    fn chart_round_trip_and_errors() {
        let c12 = Chart::new(0);
        let x = c12.coords(&line_e12()).unwrap();
        assert!(x.iter().all(|v| v.is_zero()));

        let m = QMatrix::from_i64(&[&[1, 1, 1, 1], &[1, 2, 3, 4]]);
        let p = pluecker_from_matrix(&m).unwrap(); // (1,2,3,1,2,1)
        let x = c12.coords(&p).unwrap();
        assert_eq!(x, [rat(2), rat(3), rat(1), rat(2)]);
        let back = c12.from_coords(&x);
        assert!(back.proj_eq(&p));
        assert_eq!(back.coords()[5], rat(1)); // p34 = 2*2 - 3*1

        // a point outside the chart
        let p34line = join_points(&e(2), &e(3)).unwrap();
        assert!(c12.coords(&p34line).is_err());
        assert!(!c12.contains(&p34line));
    }

    #[test]
    fn chart_round_trip_all_pivots() {
        let m = QMatrix::from_rows(vec![
            vec![rat(1), ratio(1, 2), rat(-1), rat(3)],
            vec![rat(0), rat(1), rat(5), ratio(2, 3)],
        ]);
        let p = pluecker_from_matrix(&m).unwrap();
        for chart in Chart::all() {
            if !chart.contains(&p) {
                continue;
            }
            let x = chart.coords(&p).unwrap();
            assert!(chart.from_coords(&x).proj_eq(&p));
        }
    }

    #[test]
    fn pullback_matches_evaluation() {
        use crate::poly::PolyQ;
        // f = p12*p34 + p13^2 - p24*p14, evaluated on chart points
        let v = |k| PolyQ::var(6, k);
        let f = v(0).mul(&v(5)).add(&v(1).mul(&v(1))).sub(&v(4).mul(&v(2)));
        for chart in Chart::all() {
            let g = chart.pullback(&f);
            let x = [ratio(1, 2), rat(3), rat(-2), ratio(5, 7)];
            let p = chart.from_coords(&x);
            assert_eq!(g.eval(&x), f.eval(p.coords().as_slice()));
        }
    }

    #[test]
    fn representative_recovers_line() {
        let m = QMatrix::from_rows(vec![
            vec![rat(1), ratio(1, 3), rat(0), rat(-2)],
            vec![rat(4), rat(1), rat(1), rat(7)],
        ]);
        let p = pluecker_from_matrix(&m).unwrap();
        let y = p.representative();
        assert_eq!(y.rank(), 2);
        assert!(pluecker_from_matrix(&y).unwrap().proj_eq(&p));
    }
}
