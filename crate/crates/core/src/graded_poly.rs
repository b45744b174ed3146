//! Sparse polynomials in the variables `x_g`, `g` in a finite abelian group,
//! with coefficients in `Z[zeta_N]` (integer polynomials use `N = 1`).
//!
//! Every monomial `x_{g_1} ... x_{g_k}` carries the grade `g_1 ... g_k`, and
//! `graded_component(f, h)` keeps exactly the monomials of grade `h`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::cyclotomic::{Cyclo, CycloRing};
use crate::error::{Error, Result};
use crate::groups::Group;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u8>,
    degree: u32,
    grade: usize,
}

impl Monomial {
    pub fn one(group: &Group) -> Monomial {
        Monomial { exponents: vec![0; group.size()], degree: 0, grade: group.identity() }
    }

    pub fn variable(group: &Group, g: usize) -> Monomial {
        let mut m = Monomial::one(group);
        m.exponents[g] = 1;
        m.degree = 1;
        m.grade = g;
        m
    }

    pub fn from_exponents(group: &Group, exponents: Vec<u8>) -> Result<Monomial> {
        if exponents.len() != group.size() {
            return Err(Error::AssignmentLength { expected: group.size(), got: exponents.len() });
        }
        let degree = exponents.iter().map(|&e| e as u32).sum();
        let grade = grade_of(group, &exponents);
        Ok(Monomial { exponents, degree, grade })
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The group element `prod g^{e_g}`.
    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn mul(&self, other: &Monomial, group: &Group) -> Monomial {
        let exponents = self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect();
        Monomial { exponents, degree: self.degree + other.degree, grade: group.mul(self.grade, other.grade) }
    }
}

fn grade_of(group: &Group, exponents: &[u8]) -> usize {
    exponents
        .iter()
        .enumerate()
        .fold(group.identity(), |acc, (g, &e)| group.mul(acc, group.pow(g, e as u64)))
}

/// Graded lexicographic order: total degree first, then exponent vectors.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct GradedPoly {
    group: Group,
    ring: Arc<CycloRing>,
    terms: BTreeMap<Monomial, Cyclo>,
}

impl GradedPoly {
    pub fn zero(group: &Group, ring: &Arc<CycloRing>) -> GradedPoly {
        GradedPoly { group: group.clone(), ring: Arc::clone(ring), terms: BTreeMap::new() }
    }

    pub fn integer_ring() -> Arc<CycloRing> {
        CycloRing::new(1)
    }

    pub fn constant(group: &Group, c: Cyclo) -> GradedPoly {
        let mut p = GradedPoly::zero(group, c.ring());
        p.add_term(Monomial::one(group), c);
        p
    }

    pub fn variable(group: &Group, ring: &Arc<CycloRing>, g: usize) -> GradedPoly {
        let mut p = GradedPoly::zero(group, ring);
        p.add_term(Monomial::variable(group, g), Cyclo::one(ring));
        p
    }

    /// `sum_g coeffs[g] x_g`.
    pub fn linear(group: &Group, coeffs: Vec<Cyclo>) -> GradedPoly {
        assert_eq!(coeffs.len(), group.size());
        let ring = Arc::clone(coeffs[0].ring());
        let mut p = GradedPoly::zero(group, &ring);
        for (g, c) in coeffs.into_iter().enumerate() {
            p.add_term(Monomial::variable(group, g), c);
        }
        p
    }

    /// Integer polynomial from `(coefficient, [(variable, exponent)])` pairs.
    pub fn from_integer_terms(group: &Group, terms: &[(i64, &[(usize, u8)])]) -> Result<GradedPoly> {
        let ring = GradedPoly::integer_ring();
        let mut p = GradedPoly::zero(group, &ring);
        for (c, vars) in terms {
            let mut exps = vec![0u8; group.size()];
            for &(g, e) in vars.iter() {
                group.check_element(g)?;
                exps[g] += e;
            }
            p.add_term(Monomial::from_exponents(group, exps)?, Cyclo::from_int(&ring, *c));
        }
        Ok(p)
    }

    pub fn add_term(&mut self, m: Monomial, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn ring(&self) -> &Arc<CycloRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cyclo)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Cyclo> {
        self.terms.get(m)
    }

    /// Total degrees occurring in the polynomial, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(Monomial::degree).collect();
        d.dedup();
        d
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree == d)
    }

    fn compatible(&self, other: &GradedPoly) -> Result<()> {
        if self.ring.order() != other.ring.order() {
            return Err(Error::RingMismatch(self.ring.order(), other.ring.order()));
        }
        if self.group != other.group {
            return Err(Error::InvalidGroup(format!("polynomials over {} and {}", self.group, other.group)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.compatible(other)?;
        let mut out = GradedPoly::zero(&self.group, &self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2, &self.group), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Cyclo) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.group, &self.ring);
        for (m, coeff) in &self.terms {
            out.add_term(m.clone(), coeff * c);
        }
        out
    }

    /// The sum of the terms of grade `h`.
    pub fn graded_component(&self, h: usize) -> GradedPoly {
        let terms = self.terms.iter().filter(|(m, _)| m.grade == h).map(|(m, c)| (m.clone(), c.clone())).collect();
        GradedPoly { group: self.group.clone(), ring: Arc::clone(&self.ring), terms }
    }

    /// Non-zero graded components keyed by grade.
    pub fn components(&self) -> BTreeMap<usize, GradedPoly> {
        let mut out: BTreeMap<usize, GradedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.grade)
                .or_insert_with(|| GradedPoly::zero(&self.group, &self.ring))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Evaluates at a total assignment `x_g = values[g]`.
    pub fn substitute(&self, values: &[BigInt]) -> Result<Cyclo> {
        if values.len() != self.group.size() {
            return Err(Error::AssignmentLength { expected: self.group.size(), got: values.len() });
        }
        let map: BTreeMap<usize, BigInt> = values.iter().cloned().enumerate().collect();
        self.substitute_map(&map)
    }

    /// Evaluates at a partial assignment that must cover every variable present.
    pub fn substitute_map(&self, values: &BTreeMap<usize, BigInt>) -> Result<Cyclo> {
        let mut acc = Cyclo::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut v = BigInt::one();
            for (g, &e) in m.exponents.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = values.get(&g).ok_or(Error::MissingVariable(g))?;
                v *= num_traits::pow(x.clone(), e as usize);
            }
            acc = &acc + &c.scale(&v);
        }
        Ok(acc)
    }

    /// Moves the coefficients into `Z`, failing if any is not a rational integer.
    pub fn to_integer_poly(&self) -> Result<GradedPoly> {
        let z = GradedPoly::integer_ring();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let n = c.as_integer().ok_or_else(|| Error::Integrality(format!("coefficient {c} of a {} term", m.degree)))?;
            terms.insert(m.clone(), Cyclo::from_int(&z, n));
        }
        Ok(GradedPoly { group: self.group.clone(), ring: z, terms })
    }

    /// Lifts an integer polynomial into `Z[zeta_N]`.
    pub fn embed(&self, ring: &Arc<CycloRing>) -> Result<GradedPoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let n = c.as_integer().ok_or_else(|| Error::Integrality(format!("cannot embed coefficient {c}")))?;
            terms.insert(m.clone(), Cyclo::from_int(ring, n));
        }
        Ok(GradedPoly { group: self.group.clone(), ring: Arc::clone(ring), terms })
    }

    /// Integer coefficients keyed by monomial; `None` if any coefficient is not an integer.
    pub fn integer_terms(&self) -> Option<BTreeMap<Monomial, BigInt>> {
        self.terms.iter().map(|(m, c)| c.as_integer().map(|n| (m.clone(), n))).collect()
    }
}

impl fmt::Display for GradedPoly {
    /// Terms in decreasing graded-lexicographic order, e.g.
    /// `x_0^2 - 2*x_1*x_3 + x_2^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = m
                .exponents
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(g, &e)| if e == 1 { format!("x_{g}") } else { format!("x_{g}^{e}") })
                .collect();
            let (negative, coeff) = match c.as_integer() {
                Some(n) => (n.is_negative(), if n.abs().is_one() && !vars.is_empty() { None } else { Some(n.abs().to_string()) }),
                None => (false, Some(format!("({c})"))),
            };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts: Vec<String> = coeff.into_iter().collect();
            parts.extend(vars);
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPoly[{}; Z[zeta_{}]]({})", self.group, self.ring.order(), self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&GradedPoly> for &GradedPoly {
            type Output = GradedPoly;
            /// Panics when the operands differ in ring or group.
            fn $method(self, rhs: &GradedPoly) -> GradedPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        GradedPoly { group: self.group.clone(), ring: Arc::clone(&self.ring), terms }
    }
}

/// `true` when every term of `f` has its grade in `grades`.
pub fn supported_on(f: &GradedPoly, grades: &[usize]) -> bool {
    f.terms.keys().all(|m| grades.contains(&m.grade))
}

/// Converts a list of machine integers to the `BigInt` values `substitute` expects.
pub fn big_values(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn zpoly(group: &Group, terms: &[(i64, &[(usize, u8)])]) -> GradedPoly {
        GradedPoly::from_integer_terms(group, terms).unwrap()
    }

    #[test]
    fn square_of_a_sum_in_c2() {
        let c2 = Group::cyclic(2).unwrap();
        let z = GradedPoly::integer_ring();
        let s = &GradedPoly::variable(&c2, &z, 0) + &GradedPoly::variable(&c2, &z, 1);
        let sq = &s * &s;
        assert_eq!(sq, zpoly(&c2, &[(1, &[(0, 2)]), (2, &[(0, 1), (1, 1)]), (1, &[(1, 2)])]));
        let grades: Vec<usize> = sq.terms().map(|(m, _)| m.grade()).collect();
        assert_eq!(grades, vec![0, 1, 0]);
        assert!((&sq * &GradedPoly::zero(&c2, &z)).is_zero());
    }

    #[test]
    fn product_in_c4_has_odd_grades() {
        let c4 = Group::cyclic(4).unwrap();
        let z = GradedPoly::integer_ring();
        let x = |g| GradedPoly::variable(&c4, &z, g);
        let p = &(&x(0) + &x(2)) * &(&x(1) + &x(3));
        assert_eq!(p.len(), 4);
        assert!(p.terms().all(|(m, _)| m.grade() == 1 || m.grade() == 3));
        assert_eq!(p.components().len(), 2);
    }

    #[test]
    fn substitution_examples() {
        let c4 = Group::cyclic(4).unwrap();
        let z0 = zpoly(&c4, &[(1, &[(0, 2)]), (1, &[(2, 2)]), (-2, &[(1, 1), (3, 1)])]);
        let at = |v: &[i64]| z0.substitute(&big_values(v)).unwrap().as_integer().unwrap();
        assert_eq!(at(&[1, 0, 0, 0]), BigInt::from(1));
        assert_eq!(at(&[2, 1, 1, 1]), BigInt::from(3));
        let zero = GradedPoly::zero(&c4, &GradedPoly::integer_ring());
        assert!(zero.substitute(&big_values(&[5, 6, 7, 8])).unwrap().is_zero());
        let partial = BTreeMap::from([(0, BigInt::from(1)), (1, BigInt::from(1))]);
        assert_eq!(z0.substitute_map(&partial), Err(Error::MissingVariable(2)));
    }

    #[test]
    fn rendering() {
        let c4 = Group::cyclic(4).unwrap();
        let z0 = zpoly(&c4, &[(1, &[(0, 2)]), (1, &[(2, 2)]), (-2, &[(1, 1), (3, 1)])]);
        assert_eq!(z0.to_string(), "x_0^2 - 2*x_1*x_3 + x_2^2");
        let z2 = zpoly(&c4, &[(2, &[(0, 1), (2, 1)]), (-1, &[(1, 2)]), (-1, &[(3, 2)])]);
        assert_eq!(z2.to_string(), "2*x_0*x_2 - x_1^2 - x_3^2");
        assert_eq!(GradedPoly::zero(&c4, &GradedPoly::integer_ring()).to_string(), "0");
        let r4 = CycloRing::new(4);
        let twisted = GradedPoly::linear(&c4, (0..4).map(|k| Cyclo::root_of_unity(&r4, k)).collect());
        assert_eq!(twisted.to_string(), "x_0 + (z)*x_1 - x_2 + (-z)*x_3");
    }

    #[test]
    fn integrality_conversion() {
        let c4 = Group::cyclic(4).unwrap();
        let r4 = CycloRing::new(4);
        let p = GradedPoly::linear(&c4, (0..4).map(|k| Cyclo::root_of_unity(&r4, k)).collect());
        assert!(matches!(p.to_integer_poly(), Err(Error::Integrality(_))));
        let q = &p * &p.scale(&Cyclo::one(&r4));
        assert!(q.to_integer_poly().is_err());
    }

    fn arb_monomial(group: Group) -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u8..3, group.size()).prop_map(move |e| Monomial::from_exponents(&group, e).unwrap())
    }

    fn arb_poly(group: Group) -> impl Strategy<Value = GradedPoly> {
        let g2 = group.clone();
        prop::collection::vec((arb_monomial(group), -5i64..5), 0..6).prop_map(move |terms| {
            let z = GradedPoly::integer_ring();
            let mut p = GradedPoly::zero(&g2, &z);
            for (m, c) in terms {
                p.add_term(m, Cyclo::from_int(&z, c));
            }
            p
        })
    }

    fn c4x2() -> Group {
        Group::new(&[4, 2]).unwrap()
    }

    proptest! {
        #[test]
        fn grade_is_a_homomorphism(a in arb_monomial(c4x2()), b in arb_monomial(c4x2())) {
            let g = c4x2();
            let ab = a.mul(&b, &g);
            prop_assert_eq!(ab.grade(), g.mul(a.grade(), b.grade()));
            prop_assert_eq!(ab.clone(), Monomial::from_exponents(&g, ab.exponents().to_vec()).unwrap());
            prop_assert_eq!(ab.degree(), a.degree() + b.degree());
        }

        #[test]
        fn components_are_disjoint_idempotent_projections(f in arb_poly(c4x2()), h in arb_poly(c4x2())) {
            let g = c4x2();
            let mut total = GradedPoly::zero(&g, f.ring());
            for x in g.elements() {
                let fx = f.graded_component(x);
                prop_assert_eq!(fx.graded_component(x), fx.clone());
                prop_assert_eq!((&f + &h).graded_component(x), &fx + &h.graded_component(x));
                for y in g.elements().filter(|&y| y != x) {
                    prop_assert!(fx.graded_component(y).is_zero());
                }
                total = &total + &fx;
            }
            prop_assert_eq!(total, f);
        }

        #[test]
        fn substitution_is_multiplicative(f in arb_poly(c4x2()), h in arb_poly(c4x2()),
                                          v in prop::collection::vec(-4i64..4, 8)) {
            let v = big_values(&v);
            let lhs = (&f * &h).substitute(&v).unwrap();
            let rhs = &f.substitute(&v).unwrap() * &h.substitute(&v).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
