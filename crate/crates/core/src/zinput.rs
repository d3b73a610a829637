//! Totally positive input matrices Z and their validation.
//!
//! A Z matrix is n x 4 with every minor of every order strictly positive.
//! Ingestion also records whether Z is generic in the sense that no line in
//! P^3 meets five or more of the cyclic edge lines Z_i Z_{i+1}; the boundary
//! stratification downstream is only valid for generic Z.

use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grassmann::{join_points, plane_through_points, star, PlaneP3, Pluecker, PointP3};
use crate::matrix::QMatrix;
use crate::rat::Rat;

/// Validated totally positive n x 4 matrix, rows read as points Z_1..Z_n in P^3.
/// Indices are cyclic throughout: Z_{n+j} = Z_j.
#[derive(Debug, Clone)]
pub struct ZMatrix {
    n: usize,
    m: QMatrix,
    generic: bool,
}

impl ZMatrix {
    pub fn new(m: QMatrix) -> Result<ZMatrix> {
        if m.cols() != 4 || m.rows() < 4 {
            return Err(Error::Dimension(format!(
                "Z must be n x 4 with n >= 4, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if !check_totally_positive(&m) {
            return Err(Error::NotTotallyPositive);
        }
        let generic = check_genericity_matrix(&m);
        Ok(ZMatrix { n: m.rows(), m, generic })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.m
    }

    pub fn generic(&self) -> bool {
        self.generic
    }

    pub fn require_generic(&self) -> Result<()> {
        if self.generic {
            Ok(())
        } else {
            Err(Error::NonGenericZ)
        }
    }

    /// Cyclic index into 1..=n.
    pub fn cyc(&self, i: i64) -> usize {
        let n = self.n as i64;
        (((i - 1) % n + n) % n + 1) as usize
    }

    /// Row Z_i as a point, i interpreted cyclically (1-based).
    pub fn point(&self, i: i64) -> PointP3 {
        let r = self.cyc(i) - 1;
        PointP3::from_slice(self.m.row(r))
    }

    /// The line Z_a Z_b through two distinct marked points, in sorted order.
    pub fn line(&self, a: i64, b: i64) -> Pluecker {
        let (a, b) = (self.cyc(a), self.cyc(b));
        assert_ne!(a, b, "line needs two distinct marked points");
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        join_points(&self.point(a as i64), &self.point(b as i64))
            .expect("rows of a totally positive matrix are distinct points")
    }

    /// Edge line number i: the line Z_i Z_{i+1}, with the wrap-around edge n
    /// taken in sorted order Z_1 Z_n so bracket signs follow the cyclic
    /// convention <AB n(n+1)> = <AB 1n>.
    pub fn edge_line(&self, i: i64) -> Pluecker {
        let i = self.cyc(i);
        if i == self.n {
            self.line(1, self.n as i64)
        } else {
            self.line(i as i64, i as i64 + 1)
        }
    }

    /// The plane Z_{i-1} Z_i Z_{i+1}.
    pub fn plane(&self, i: i64) -> PlaneP3 {
        plane_through_points(&self.point(i - 1), &self.point(i), &self.point(i + 1))
            .expect("three consecutive rows of a positive matrix span a plane")
    }

    /// Bracket <AB i(i+1)> of a line against edge i.
    pub fn edge_bracket(&self, p: &Pluecker, i: i64) -> Rat {
        crate::grassmann::bracket_pq(p, &self.edge_line(i))
    }

    /// All n cyclic edge brackets (<AB 12>, <AB 23>, ..., <AB 1n>).
    pub fn cyclic_brackets(&self, p: &Pluecker) -> Vec<Rat> {
        (1..=self.n as i64).map(|i| self.edge_bracket(p, i)).collect()
    }

    /// The flip sequence (<AB 12>, <AB 13>, ..., <AB 1n>).
    pub fn flip_sequence(&self, p: &Pluecker) -> Vec<Rat> {
        (2..=self.n as i64)
            .map(|j| crate::grassmann::bracket_pq(p, &self.line(1, j)))
            .collect()
    }

    /// Signed 4x4 minor <i j k l> of Z with rows in the given order.
    pub fn minor4(&self, rows: [i64; 4]) -> Rat {
        let sel: Vec<usize> = rows.iter().map(|&i| self.cyc(i) - 1).collect();
        self.m
            .submatrix(&sel, &[0, 1, 2, 3])
            .det4()
            .expect("4x4 submatrix")
    }
}

/// Rows (1, t, t^2, t^3) of the moment curve at strictly increasing positive
/// nodes; such matrices are totally positive.
pub fn moment_curve_z(nodes: &[Rat]) -> Result<ZMatrix> {
    if nodes.len() < 4 {
        return Err(Error::InvalidInput("need at least 4 nodes".into()));
    }
    for w in nodes.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidInput("nodes must be strictly increasing".into()));
        }
    }
    if !nodes[0].is_positive() {
        return Err(Error::InvalidInput("nodes must be positive".into()));
    }
    let rows = nodes
        .iter()
        .map(|t| {
            let t2 = t * t;
            vec![Rat::one(), t.clone(), t2.clone(), t2 * t]
        })
        .collect();
    ZMatrix::new(QMatrix::from_rows(rows))
}

/// Moment curve at integer nodes 1..n, the default test configuration.
pub fn moment_curve_default(n: usize) -> ZMatrix {
    let nodes: Vec<Rat> = (1..=n as i64).map(crate::rat::rat).collect();
    moment_curve_z(&nodes).expect("integer moment nodes are valid")
}

/// All minors of all orders 1..=4 over increasing row and column index sets
/// must be strictly positive.
pub fn check_totally_positive(m: &QMatrix) -> bool {
    if m.cols() != 4 {
        return false;
    }
    let n = m.rows();
    for k in 1..=4usize {
        if k > n {
            break;
        }
        let row_sets = subsets(n, k);
        let col_sets = subsets(4, k);
        for rs in &row_sets {
            for cs in &col_sets {
                let d = m.submatrix(rs, cs).det().expect("square");
                if !d.is_positive() {
                    return false;
                }
            }
        }
    }
    true
}

/// No real line may satisfy five of the cyclic edge incidences at once. Every
/// 5-subset of edge brackets cuts out a linear space in P^5; Z is generic iff
/// the Plücker quadric restricted to that space is definite (no real point).
pub fn check_genericity_matrix(m: &QMatrix) -> bool {
    let n = m.rows();
    if n < 5 {
        return true;
    }
    let z = ZMatrixView { m, n };
    let edges: Vec<Vec<Rat>> = (1..=n as i64)
        .map(|i| star(z.edge_line(i).coords()).to_vec())
        .collect();
    subsets(n, 5).par_iter().all(|s| {
        let rows: Vec<Vec<Rat>> = s.iter().map(|&i| edges[i].clone()).collect();
        let cond = QMatrix::from_rows(rows);
        let kernel = cond.kernel();
        restricted_quadric_is_definite(&kernel)
    })
}

fn restricted_quadric_is_definite(kernel: &[QMatrix]) -> bool {
    let k = kernel.len();
    if k == 0 {
        return true;
    }
    // Gram matrix of the Plücker pairing on the kernel basis
    let mut g = QMatrix::zeros(k, k);
    for a in 0..k {
        let va = kernel[a].col_vec(0);
        let sa: [Rat; 6] = std::array::from_fn(|i| va[i].clone());
        let stars = star(&sa);
        for b in 0..k {
            let vb = kernel[b].col_vec(0);
            g[(a, b)] = (0..6).map(|i| &stars[i] * &vb[i]).sum();
        }
    }
    g.is_definite()
}

// minimal view used before a ZMatrix exists
struct ZMatrixView<'a> {
    m: &'a QMatrix,
    n: usize,
}

impl ZMatrixView<'_> {
    fn edge_line(&self, i: i64) -> Pluecker {
        let i = ((i - 1).rem_euclid(self.n as i64)) as usize + 1;
        let (a, b) = if i == self.n { (1, self.n) } else { (i, i + 1) };
        join_points(
            &PointP3::from_slice(self.m.row(a - 1)),
            &PointP3::from_slice(self.m.row(b - 1)),
        )
        .expect("distinct rows")
    }
}

pub fn check_genericity(z: &ZMatrix) -> bool {
    z.generic()
}

/// Increasing k-subsets of {0..n-1}.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};
    use num_traits::Zero;

    #[test]
    fn moment_curve_examples() {
        let z = moment_curve_default(4);
        assert_eq!(z.matrix().det().unwrap(), rat(12)); // Vandermonde(1,2,3,4)

        let z5 = moment_curve_default(5);
        // all five maximal minors positive
        for s in subsets(5, 4) {
            let d = z5.matrix().submatrix(&s, &[0, 1, 2, 3]).det4().unwrap();
            assert!(d.is_positive());
        }

        let bad: Vec<Rat> = [1, 1, 2, 3].iter().map(|&t| rat(t)).collect();
        assert!(moment_curve_z(&bad).is_err());
        let nonpos: Vec<Rat> = [-1, 1, 2, 3].iter().map(|&t| rat(t)).collect();
        assert!(moment_curve_z(&nonpos).is_err());
    }

    #[test]
    fn totally_positive_checks() {
        assert!(check_totally_positive(moment_curve_default(5).matrix()));
        // one negated entry fails a 1x1 minor
        let mut m = moment_curve_default(5).matrix().clone();
        m[(2, 1)] = -m[(2, 1)].clone();
        assert!(!check_totally_positive(&m));
        // identity has zero minors
        assert!(!check_totally_positive(&QMatrix::identity(4)));
    }

    #[test]
    fn row_scaling_preserves_positivity_verdict() {
        let z = moment_curve_default(6);
        let mut m = z.matrix().clone();
        let scales = [ratio(1, 2), rat(3), ratio(7, 5), rat(1), ratio(2, 9), rat(4)];
        for i in 0..6 {
            for j in 0..4 {
                m[(i, j)] = &m[(i, j)] * &scales[i];
            }
        }
        assert!(check_totally_positive(&m));
        assert!(ZMatrix::new(m).unwrap().generic());
    }

    #[test]
    fn genericity_small_and_moment() {
        // n = 4, 5 with integer moment nodes
        assert!(moment_curve_default(4).generic());
        assert!(moment_curve_default(5).generic());
        assert!(moment_curve_default(8).generic());
    }

    #[test]
    fn adversarial_z_fails_genericity() {
        // Build a 10 x 4 matrix whose edges Z1Z2, Z3Z4, Z5Z6, Z7Z8, Z9Z10 all
        // meet one rational line: pick the transversal through two points of
        // the first two edges, then force edges three to five through it by
        // solving for the even-indexed endpoints.
        let z9 = moment_curve_default(10); // only a source of rational points
        let p1 = PointP3::affine_combo(&z9.point(1), &rat(1), &z9.point(2));
        let p2 = PointP3::affine_combo(&z9.point(3), &rat(2), &z9.point(4));
        let ab = join_points(&p1, &p2).unwrap();
        // w, w' rational points on ab
        let w1 = p1.clone();
        let w2 = PointP3::affine_combo(&p1, &rat(1), &p2);
        let mut rows: Vec<Vec<Rat>> = (1..=10).map(|i| z9.point(i).0.to_vec()).collect();
        rows[5] = PointP3::affine_combo(&z9.point(6), &rat(1), &w2).0.to_vec(); // Z6 on span(Z6', w2)? replaced: Z6 := Z5 + w2
        rows[5] = PointP3::affine_combo(&z9.point(5), &rat(1), &w2).0.to_vec();
        rows[7] = PointP3::affine_combo(&z9.point(7), &rat(1), &w1).0.to_vec();
        rows[9] = PointP3::affine_combo(&z9.point(9), &rat(1), &w2).0.to_vec();
        let m = QMatrix::from_rows(rows);
        // the five edges now share the transversal ab
        for (a, b) in [(0usize, 1usize), (2, 3), (4, 5), (6, 7), (8, 9)] {
            let edge = join_points(&PointP3::from_slice(m.row(a)), &PointP3::from_slice(m.row(b))).unwrap();
            assert!(crate::grassmann::bracket_pq(&ab, &edge).is_zero());
        }
        assert!(!check_genericity_matrix(&m));
    }

    #[test]
    fn cyclic_indexing() {
        let z = moment_curve_default(5);
        assert_eq!(z.cyc(6), 1);
        assert_eq!(z.cyc(0), 5);
        assert_eq!(z.cyc(-1), 4);
        assert!(z.point(6).proj_eq(&z.point(1)));
        // wrap-around edge uses sorted order
        assert!(z.edge_line(5).proj_eq(&z.line(5, 6)));
    }

    #[test]
    fn minor4_signs() {
        let z = moment_curve_default(5);
        assert!(z.minor4([1, 2, 3, 4]).is_positive());
        assert_eq!(z.minor4([2, 1, 3, 4]), -z.minor4([1, 2, 3, 4]));
    }
}
