//! Multivariate polynomials over Q in at most six variables, and univariate
//! rational functions with exact residues.
//!
//! Exponent vectors are stored dense (`[u32; 6]`, entries beyond `nvars` are
//! zero), terms in a BTreeMap so iteration order is canonical.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

pub const MAX_VARS: usize = 6;

pub type Exp = [u32; MAX_VARS];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyQ {
    nvars: usize,
    terms: BTreeMap<Exp, Rat>,
}

impl PolyQ {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        PolyQ { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = PolyQ::zero(nvars);
        if !c.is_zero() {
            p.terms.insert([0; MAX_VARS], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        PolyQ::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        PolyQ::monomial(nvars, e, Rat::one())
    }

    pub fn monomial(nvars: usize, exp: Exp, coeff: Rat) -> Self {
        assert!(nvars <= MAX_VARS);
        assert!(exp[nvars..].iter().all(|&e| e == 0), "exponent outside arity");
        let mut p = PolyQ::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(exp, coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &Exp) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    fn insert(&mut self, exp: Exp, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &PolyQ) -> PolyQ {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyQ) -> PolyQ {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> PolyQ {
        let mut out = PolyQ::zero(self.nvars);
        for (e, c) in &self.terms {
            out.terms.insert(*e, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &PolyQ) -> PolyQ {
        assert_eq!(self.nvars, other.nvars);
        let mut out = PolyQ::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = [0u32; MAX_VARS];
                for k in 0..MAX_VARS {
                    e[k] = ea[k] + eb[k];
                }
                out.insert(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> PolyQ {
        if c.is_zero() {
            return PolyQ::zero(self.nvars);
        }
        let mut out = PolyQ::zero(self.nvars);
        for (e, a) in &self.terms {
            out.terms.insert(*e, a * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> PolyQ {
        let mut out = PolyQ::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &ek) in e[..self.nvars].iter().enumerate() {
                for _ in 0..ek {
                    t *= &point[k];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute a polynomial for every variable. All `subs` must share an
    /// arity; the result lives in that arity.
    pub fn compose(&self, subs: &[PolyQ]) -> PolyQ {
        assert_eq!(subs.len(), self.nvars);
        let target = subs.first().map_or(0, |p| p.nvars);
        assert!(subs.iter().all(|p| p.nvars == target));
        // memoize powers of each substituted variable
        let mut pows: Vec<Vec<PolyQ>> = subs.iter().map(|p| vec![PolyQ::one(target), p.clone()]).collect();
        let mut acc = PolyQ::zero(target);
        for (e, c) in &self.terms {
            let mut t = PolyQ::constant(target, c.clone());
            for (k, &ek) in e[..self.nvars].iter().enumerate() {
                if ek == 0 {
                    continue;
                }
                while pows[k].len() <= ek as usize {
                    let next = pows[k].last().unwrap().mul(&subs[k]);
                    pows[k].push(next);
                }
                t = t.mul(&pows[k][ek as usize]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> PolyQ {
        assert!(var < self.nvars);
        let mut out = PolyQ::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[var] -= 1;
            out.insert(e2, c * Rat::from_integer(e[var].into()));
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Multivariate divisibility test: remainder of division by a single
    /// divisor (a one-element Gröbner basis) is zero iff `self` is in (g).
    pub fn divisible_by(&self, g: &PolyQ) -> bool {
        assert_eq!(self.nvars, g.nvars);
        assert!(!g.is_zero());
        let (lt_e, lt_c) = g.terms.iter().next_back().map(|(e, c)| (*e, c.clone())).unwrap();
        let mut rem = self.clone();
        'outer: loop {
            let candidates: Vec<Exp> = rem.terms.keys().rev().copied().collect();
            for e in candidates {
                if (0..MAX_VARS).all(|k| e[k] >= lt_e[k]) {
                    let mut q = [0u32; MAX_VARS];
                    for k in 0..MAX_VARS {
                        q[k] = e[k] - lt_e[k];
                    }
                    let c = rem.coeff(&e) / &lt_c;
                    let sub = g.mul(&PolyQ::monomial(self.nvars, q, c));
                    rem = rem.sub(&sub);
                    continue 'outer;
                }
            }
            break;
        }
        rem.is_zero()
    }

    pub fn display(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            let cs = crate::rat::format_rat(c);
            for (k, &ek) in e[..self.nvars].iter().enumerate() {
                match ek {
                    0 => {}
                    1 => factors.push(names[k].to_string()),
                    _ => factors.push(format!("{}^{}", names[k], ek)),
                }
            }
            if factors.is_empty() {
                parts.push(cs);
            } else if cs == "1" {
                parts.push(factors.join("*"));
            } else if cs == "-1" {
                parts.push(format!("-{}", factors.join("*")));
            } else {
                parts.push(format!("{}*{}", cs, factors.join("*")));
            }
        }
        parts.join(" + ").replace("+ -", "- ")
    }

    // ---- univariate helpers (nvars == 1) ----

    pub fn from_coeffs(coeffs: &[Rat]) -> PolyQ {
        let mut p = PolyQ::zero(1);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = [0; MAX_VARS];
            e[0] = k as u32;
            p.insert(e, c.clone());
        }
        p
    }

    pub fn coeffs(&self) -> Vec<Rat> {
        assert_eq!(self.nvars, 1);
        let deg = self.total_degree().map_or(0, |d| d as usize);
        let mut out = vec![Rat::zero(); deg + 1];
        for (e, c) in &self.terms {
            out[e[0] as usize] = c.clone();
        }
        out
    }

    pub fn eval1(&self, t: &Rat) -> Rat {
        assert_eq!(self.nvars, 1);
        // Horner
        let coeffs = self.coeffs();
        let mut acc = Rat::zero();
        for c in coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn deg1(&self) -> Option<u32> {
        assert_eq!(self.nvars, 1);
        self.total_degree()
    }

    /// Univariate division with remainder.
    pub fn div_rem1(&self, d: &PolyQ) -> (PolyQ, PolyQ) {
        assert_eq!(self.nvars, 1);
        assert_eq!(d.nvars, 1);
        assert!(!d.is_zero());
        let dd = d.deg1().unwrap();
        let dlc = d.coeff(&exp1(dd));
        let mut rem = self.clone();
        let mut quo = PolyQ::zero(1);
        while let Some(rd) = rem.deg1() {
            if rd < dd || rem.is_zero() {
                break;
            }
            let c = rem.coeff(&exp1(rd)) / &dlc;
            let m = PolyQ::monomial(1, exp1(rd - dd), c);
            quo = quo.add(&m);
            rem = rem.sub(&d.mul(&m));
            if rem.is_zero() {
                break;
            }
        }
        (quo, rem)
    }

    /// Monic univariate gcd.
    pub fn gcd1(&self, other: &PolyQ) -> PolyQ {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem1(&b);
            a = b;
            b = r;
        }
        a.monic1()
    }

    pub fn monic1(&self) -> PolyQ {
        assert_eq!(self.nvars, 1);
        match self.deg1() {
            None => self.clone(),
            Some(d) => {
                let lc = self.coeff(&exp1(d));
                self.scale(&(Rat::one() / lc))
            }
        }
    }

    /// Real roots among the rationals: exact rational root finding via the
    /// factor test on candidate divisors is overkill here; the callers only
    /// need roots of degree <= 2, or roots of linear factors.
    pub fn rational_roots(&self) -> Vec<Rat> {
        assert_eq!(self.nvars, 1);
        match self.deg1() {
            None | Some(0) => vec![],
            Some(1) => {
                let c = self.coeffs();
                vec![-&c[0] / &c[1]]
            }
            Some(2) => {
                let c = self.coeffs();
                let (a, b, cc) = (&c[2], &c[1], &c[0]);
                let disc = b * b - Rat::from_integer(4.into()) * a * cc;
                match rat_sqrt(&disc) {
                    None => vec![],
                    Some(s) => {
                        let two_a = a * Rat::from_integer(2.into());
                        let r1 = (-b + &s) / &two_a;
                        let r2 = (-b - &s) / &two_a;
                        let mut v = vec![r1, r2];
                        v.dedup();
                        v.sort();
                        v
                    }
                }
            }
            Some(_) => {
                // trial division by candidate linear factors from small roots is
                // not needed; the geometry only restricts to degree <= 2
                unimplemented!("rational roots only implemented through degree 2")
            }
        }
    }
}

pub fn exp1(d: u32) -> Exp {
    let mut e = [0; MAX_VARS];
    e[0] = d;
    e
}

/// Exact square root of a nonnegative rational, when it exists.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    use num_traits::Signed;
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Quotient of univariate polynomials, stored reduced with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun1 {
    num: PolyQ,
    den: PolyQ,
}

impl RatFun1 {
    pub fn new(num: PolyQ, den: PolyQ) -> Result<RatFun1> {
        assert_eq!(num.nvars(), 1);
        assert_eq!(den.nvars(), 1);
        if den.is_zero() {
            return Err(Error::InvalidInput("rational function with zero denominator".into()));
        }
        let g = num.gcd1(&den);
        let (num, den) = if g.deg1().map_or(false, |d| d > 0) {
            (num.div_rem1(&g).0, den.div_rem1(&g).0)
        } else {
            (num, den)
        };
        // monic denominator fixes the representative
        let lc = den.coeff(&exp1(den.deg1().unwrap()));
        Ok(RatFun1 { num: num.scale(&(Rat::one() / &lc)), den: den.monic1() })
    }

    pub fn num(&self) -> &PolyQ {
        &self.num
    }

    pub fn den(&self) -> &PolyQ {
        &self.den
    }

    pub fn eval(&self, t: &Rat) -> Option<Rat> {
        let d = self.den.eval1(t);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval1(t) / d)
        }
    }

    pub fn scale(&self, c: &Rat) -> RatFun1 {
        RatFun1 { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn neg(&self) -> RatFun1 {
        self.scale(&-Rat::one())
    }

    /// Residue at a simple pole: num(t0)/den'(t0).
    pub fn residue_at(&self, t0: &Rat) -> Result<Rat> {
        if !self.den.eval1(t0).is_zero() {
            return Err(Error::Degenerate(format!(
                "{} is not a pole",
                crate::rat::format_rat(t0)
            )));
        }
        let dprime = self.den.derivative(0).eval1(t0);
        if dprime.is_zero() {
            return Err(Error::Degenerate(format!(
                "pole of order > 1 at {}",
                crate::rat::format_rat(t0)
            )));
        }
        Ok(self.num.eval1(t0) / dprime)
    }
}
