//! Group determinant evaluators and the subgroup factorization engine.
//!
//! Three routes compute `Theta_G(a) = det(a_{g h^-1})` at an integer
//! assignment: fraction-free elimination on the group matrix (any finite
//! group), the product of character sums over `Z[zeta_N]` (abelian groups),
//! and the block-permanent style reduction to an abelian subgroup. The
//! factorization through `G/H` and the canonical polynomials `z_h` sit on
//! top of the character route.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{Cyclo, CycloRing};
use crate::error::{Error, Result};
use crate::graded_poly::GradedPoly;
use crate::groups::{all_subgroups, CayleyGroup, CharacterDecomposition, Group, GroupSpec, Quotient, Subgroup};

/// Largest index `[G:H]` accepted by [`block_determinant`] (the sum runs over `S_n`).
pub const MAX_BLOCK_INDEX: usize = 5;

/// Upper bound on the number of monomials a symbolic expansion may produce.
const MAX_SYMBOLIC_TERMS: u128 = 200_000;

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::AssignmentLength { expected, got })
    }
}

fn to_big(a: &[i64]) -> Vec<BigInt> {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

/// Determinant of a square integer matrix by Bareiss elimination.
///
/// Every interior division must be exact; a remainder is reported as an
/// error rather than silently truncated.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> Result<BigInt> {
    let n = m.len();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                if !r.is_zero() {
                    return Err(Error::InexactDivision(k));
                }
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Ok(sign * &m[n - 1][n - 1])
}

/// The group matrix `(a_{g h^-1})_{g,h}` in the group's element order.
pub fn group_matrix(group: &CayleyGroup, a: &[BigInt]) -> Vec<Vec<BigInt>> {
    (0..group.size())
        .map(|g| (0..group.size()).map(|h| a[group.mul(g, group.inv(h))].clone()).collect())
        .collect()
}

pub fn eval_bareiss(group: &CayleyGroup, a: &[i64]) -> Result<BigInt> {
    eval_bareiss_big(group, &to_big(a))
}

pub fn eval_bareiss_big(group: &CayleyGroup, a: &[BigInt]) -> Result<BigInt> {
    check_len(group.size(), a.len())?;
    bareiss_determinant(group_matrix(group, a))
}

/// Character-product evaluator with the character table precomputed.
#[derive(Clone, Debug)]
pub struct DedekindEvaluator {
    group: Group,
    ring: Arc<CycloRing>,
    table: Vec<Vec<u32>>,
}

impl DedekindEvaluator {
    pub fn new(group: &Group) -> DedekindEvaluator {
        DedekindEvaluator { group: group.clone(), ring: CycloRing::new(group.exponent()), table: group.character_table() }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// `sum_g chi(g) a_g` for the character with index `chi`.
    pub fn character_sum(&self, chi: usize, a: &[i64]) -> Cyclo {
        let mut buckets = vec![0i64; self.ring.order() as usize];
        for (g, &x) in a.iter().enumerate() {
            buckets[self.table[chi][g] as usize] += x;
        }
        Cyclo::from_power_sum(&self.ring, &buckets)
    }

    pub fn eval(&self, a: &[i64]) -> Result<BigInt> {
        check_len(self.group.size(), a.len())?;
        let mut acc = Cyclo::one(&self.ring);
        for chi in self.group.elements() {
            acc = &acc * &self.character_sum(chi, a);
            if acc.is_zero() {
                return Ok(BigInt::zero());
            }
        }
        acc.as_integer().ok_or_else(|| Error::NotInteger(acc.to_string()))
    }
}

/// `prod over chi in G^ of sum_g chi(g) a_g`, computed exactly in `Z[zeta_N]`.
pub fn eval_dedekind(group: &Group, a: &[i64]) -> Result<BigInt> {
    DedekindEvaluator::new(group).eval(a)
}

/// The group-algebra product `c_g = sum_{uv = g} a_u b_v`.
pub fn convolve(group: &CayleyGroup, a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    check_len(group.size(), a.len())?;
    check_len(group.size(), b.len())?;
    let mut c = vec![0i64; group.size()];
    for (u, &x) in a.iter().enumerate() {
        for (v, &y) in b.iter().enumerate() {
            c[group.mul(u, v)] += x * y;
        }
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    /// Exponent vector of the character `chi` in `X`.
    pub character: Vec<u32>,
    /// `Theta_{G/H}(y^chi_{tH})`.
    pub value: Cyclo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZValue {
    pub element: usize,
    #[serde(with = "crate::serde_int")]
    pub value: BigInt,
}

/// `Theta_G(a) = prod_{chi in X} Theta_{G/H}(y^chi) = Theta_H(z)` at one assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub group: String,
    pub subgroup: Vec<usize>,
    pub transversal: Vec<usize>,
    pub factors: Vec<Factor>,
    pub z_values: Vec<ZValue>,
    #[serde(with = "crate::serde_int")]
    pub product: BigInt,
}

impl FactorReport {
    pub fn z(&self, h: usize) -> Option<&BigInt> {
        self.z_values.iter().find(|z| z.element == h).map(|z| &z.value)
    }
}

pub fn eval_via_subgroup(subgroup: &Subgroup, a: &[i64]) -> Result<FactorReport> {
    eval_via_subgroup_with(&Quotient::new(subgroup), &CharacterDecomposition::new(subgroup), a)
}

/// As [`eval_via_subgroup`] with explicit transversals `T` and `X`.
pub fn eval_via_subgroup_with(
    quotient: &Quotient,
    decomposition: &CharacterDecomposition,
    a: &[i64],
) -> Result<FactorReport> {
    let subgroup = quotient.subgroup();
    if subgroup != decomposition.subgroup() {
        return Err(Error::InvalidTransversal("quotient and character decomposition use different subgroups".into()));
    }
    let group = subgroup.group();
    check_len(group.size(), a.len())?;
    let ring = CycloRing::new(group.exponent());
    let n = ring.order() as usize;

    let mut factors = Vec::with_capacity(decomposition.transversal().len());
    for &chi in decomposition.transversal() {
        // y^chi_{tH} = sum_h chi(th) a_{th}
        let y: Vec<Cyclo> = (0..quotient.len())
            .map(|label| {
                let mut buckets = vec![0i64; n];
                for g in quotient.coset(label) {
                    buckets[group.character_exponent(chi, g) as usize] += a[g];
                }
                Cyclo::from_power_sum(&ring, &buckets)
            })
            .collect();
        let mut theta = Cyclo::one(&ring);
        for &psi in decomposition.trivial_on_subgroup() {
            let mut sum = Cyclo::zero(&ring);
            for (label, &t) in quotient.transversal().iter().enumerate() {
                sum = &sum + &y[label].mul_root(group.character_exponent(psi, t) as i64);
            }
            theta = &theta * &sum;
        }
        factors.push(Factor { character: group.coords(chi), value: theta });
    }

    let product = factors.iter().fold(Cyclo::one(&ring), |acc, f| &acc * &f.value);
    let product = product.as_integer().ok_or_else(|| Error::Integrality(format!("product of factors is {product}")))?;

    let order = BigInt::from(subgroup.order());
    let mut z_values = Vec::with_capacity(subgroup.order());
    for &h in subgroup.elements() {
        let h_inv = group.inv(h);
        let mut sum = Cyclo::zero(&ring);
        for (f, &chi) in factors.iter().zip(decomposition.transversal()) {
            sum = &sum + &f.value.mul_root(group.character_exponent(chi, h_inv) as i64);
        }
        let z = sum
            .div_exact(&order)
            .ok_or_else(|| Error::Integrality(format!("|H| = {order} does not divide {sum} at h = {h}")))?;
        let value = z.as_integer().ok_or_else(|| Error::Integrality(format!("z_{h} = {z} is not an integer")))?;
        z_values.push(ZValue { element: h, value });
    }

    let sub_cayley = group.cayley().restrict(subgroup.elements())?;
    let z_vec: Vec<BigInt> = z_values.iter().map(|z| z.value.clone()).collect();
    let theta_h = eval_bareiss_big(&sub_cayley, &z_vec)?;
    let direct = eval_dedekind(group, a)?;
    if theta_h != product || direct != product {
        return Err(Error::Inconsistent(format!(
            "prod of factors = {product}, Theta_H(z) = {theta_h}, Theta_G(a) = {direct}"
        )));
    }

    Ok(FactorReport {
        group: group.to_string(),
        subgroup: subgroup.elements().to_vec(),
        transversal: quotient.transversal().to_vec(),
        factors,
        z_values,
        product,
    })
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

fn check_expansion(group: &Group, degree: usize) -> Result<()> {
    if group.size() >= 16 && degree > 4 {
        return Err(Error::ExpansionTooLarge(format!("[G:H] = {degree} > 4 for a group of order {}", group.size())));
    }
    let terms = binomial((group.size() + degree - 1) as u128, degree as u128);
    if terms > MAX_SYMBOLIC_TERMS {
        return Err(Error::ExpansionTooLarge(format!("up to {terms} monomials")));
    }
    Ok(())
}

/// The canonical polynomials `z_h`, `h` in `H`, as the grade-`h` parts of
/// `Theta_{G/H}(y_{tH})` with `y_{tH} = sum_h x_{th}`.
///
/// Fails if some coefficient is not a rational integer or if a component of
/// grade outside `H` is non-zero.
pub fn symbolic_z(subgroup: &Subgroup) -> Result<BTreeMap<usize, GradedPoly>> {
    let group = subgroup.group();
    let degree = subgroup.index();
    check_expansion(group, degree)?;
    let ring = CycloRing::new(group.exponent());
    let decomposition = CharacterDecomposition::new(subgroup);

    // Theta_{G/H}(y_{tH}) = prod over characters psi of G/H of sum_g psi(g) x_g.
    let mut product = GradedPoly::constant(group, Cyclo::one(&ring));
    for &psi in decomposition.trivial_on_subgroup() {
        let coeffs = group
            .elements()
            .map(|g| Cyclo::root_of_unity(&ring, group.character_exponent(psi, g) as i64))
            .collect();
        product = &product * &GradedPoly::linear(group, coeffs);
    }

    let mut out = BTreeMap::new();
    for (grade, component) in product.components() {
        if !subgroup.contains(grade) {
            return Err(Error::Integrality(format!("non-zero component of grade {grade} outside H")));
        }
        let z = component.to_integer_poly()?;
        if !z.is_homogeneous_of_degree(degree as u32) {
            return Err(Error::Integrality(format!("z_{grade} is not homogeneous of degree {degree}")));
        }
        out.insert(grade, z);
    }
    for &h in subgroup.elements() {
        out.entry(h).or_insert_with(|| GradedPoly::zero(group, &GradedPoly::integer_ring()));
    }
    Ok(out)
}

/// `Theta_G` as a polynomial, `prod_chi sum_g chi(g) x_g` (small groups only).
pub fn symbolic_theta(group: &Group) -> Result<GradedPoly> {
    check_expansion(group, group.size())?;
    let ring = CycloRing::new(group.exponent());
    let mut product = GradedPoly::constant(group, Cyclo::one(&ring));
    for chi in group.elements() {
        let coeffs = group
            .elements()
            .map(|g| Cyclo::root_of_unity(&ring, group.character_exponent(chi, g) as i64))
            .collect();
        product = &product * &GradedPoly::linear(group, coeffs);
    }
    product.to_integer_poly()
}

/// `Theta_H` evaluated at polynomial arguments `z_h`.
pub fn theta_h_of(subgroup: &Subgroup, z: &BTreeMap<usize, GradedPoly>) -> Result<GradedPoly> {
    let group = subgroup.group();
    let ring = CycloRing::new(group.exponent());
    let decomposition = CharacterDecomposition::new(subgroup);
    let embedded: Vec<GradedPoly> = subgroup
        .elements()
        .iter()
        .map(|h| z.get(h).ok_or(Error::MissingVariable(*h)).and_then(|p| p.embed(&ring)))
        .collect::<Result<_>>()?;
    let mut product = GradedPoly::constant(group, Cyclo::one(&ring));
    for &chi in decomposition.transversal() {
        let mut sum = GradedPoly::zero(group, &ring);
        for (p, &h) in embedded.iter().zip(subgroup.elements()) {
            sum = &sum + &p.scale(&Cyclo::root_of_unity(&ring, group.character_exponent(chi, h) as i64));
        }
        product = &product * &sum;
    }
    product.to_integer_poly()
}

type Matrix = Vec<Vec<BigInt>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(BigInt::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, bool)>) {
        let n = used.len();
        if prefix.len() == n {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| prefix[i] > prefix[j]).count();
            out.push((prefix.clone(), inversions % 2 == 1));
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                rec(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `Theta_G(a)` through the commuting-block identity for an abelian subgroup `H`.
///
/// The group matrix is cut into blocks `M_{kl} = (a_{(t_k h_i)(t_l h_j)^-1})`
/// along left cosets; the blocks must commute pairwise and
/// `sum_sigma sgn(sigma) M_{1 sigma(1)} ... M_{n sigma(n)}` must be a group
/// matrix of `H`, whose group determinant is returned.
pub fn block_determinant(group: &CayleyGroup, subgroup: &[usize], a: &[i64]) -> Result<BigInt> {
    let transversal = group.left_transversal(subgroup);
    block_determinant_with(group, subgroup, &transversal, a)
}

pub fn block_determinant_with(group: &CayleyGroup, subgroup: &[usize], transversal: &[usize], a: &[i64]) -> Result<BigInt> {
    check_len(group.size(), a.len())?;
    if !group.is_subgroup(subgroup) {
        return Err(Error::BlockStructure("H is not a subgroup".into()));
    }
    if !group.is_abelian_subset(subgroup) {
        return Err(Error::BlockStructure("H is not abelian".into()));
    }
    let m = subgroup.len();
    let n = group.size() / m;
    if n > MAX_BLOCK_INDEX {
        return Err(Error::BlockStructure(format!("index {n} exceeds {MAX_BLOCK_INDEX}")));
    }
    if transversal.len() != n {
        return Err(Error::InvalidTransversal(format!("expected {n} coset representatives")));
    }
    // identity first, so h_1 h_j^-1 runs over H
    let mut h: Vec<usize> = subgroup.to_vec();
    h.sort_by_key(|&x| (x != group.identity(), x));
    let mut covered = vec![false; group.size()];
    for &t in transversal {
        for &x in &h {
            let g = group.mul(t, x);
            if std::mem::replace(&mut covered[g], true) {
                return Err(Error::InvalidTransversal(format!("{t} repeats a left coset")));
            }
        }
    }

    let block = |k: usize, l: usize| -> Matrix {
        (0..m)
            .map(|i| {
                let left = group.mul(transversal[k], h[i]);
                (0..m)
                    .map(|j| {
                        let right = group.mul(transversal[l], h[j]);
                        BigInt::from(a[group.mul(left, group.inv(right))])
                    })
                    .collect()
            })
            .collect()
    };
    let blocks: Vec<Vec<Matrix>> = (0..n).map(|k| (0..n).map(|l| block(k, l)).collect()).collect();

    let flat: Vec<&Matrix> = blocks.iter().flatten().collect();
    for (i, x) in flat.iter().enumerate() {
        for y in &flat[i + 1..] {
            if mat_mul(x, y) != mat_mul(y, x) {
                return Err(Error::BlockStructure("blocks do not commute".into()));
            }
        }
    }

    let mut total: Matrix = vec![vec![BigInt::zero(); m]; m];
    for (perm, odd) in permutations(n) {
        let mut prod = blocks[0][perm[0]].clone();
        for k in 1..n {
            prod = mat_mul(&prod, &blocks[k][perm[k]]);
        }
        for i in 0..m {
            for j in 0..m {
                if odd {
                    total[i][j] -= &prod[i][j];
                } else {
                    total[i][j] += &prod[i][j];
                }
            }
        }
    }

    // total[i][j] must depend only on h_i h_j^-1.
    let mut by_element: HashMap<usize, BigInt> = HashMap::new();
    for i in 0..m {
        for j in 0..m {
            let u = group.mul(h[i], group.inv(h[j]));
            match by_element.get(&u) {
                Some(v) if *v != total[i][j] => {
                    return Err(Error::BlockStructure(format!("entry ({i},{j}) breaks the H-group-matrix shape")));
                }
                Some(_) => {}
                None => {
                    by_element.insert(u, total[i][j].clone());
                }
            }
        }
    }
    let mut sorted = subgroup.to_vec();
    sorted.sort_unstable();
    let sub = group.restrict(&sorted)?;
    let values: Vec<BigInt> = sorted.iter().map(|u| by_element[u].clone()).collect();
    eval_bareiss_big(&sub, &values)
}

/// Plain-text rendering of a factor report.
pub fn factor_report_text(report: &FactorReport) -> String {
    let mut out = String::new();
    writeln!(out, "group {}  H = {:?}  T = {:?}", report.group, report.subgroup, report.transversal).unwrap();
    for f in &report.factors {
        writeln!(out, "factor chi = {:?}: {}", f.character, f.value).unwrap();
    }
    for z in &report.z_values {
        writeln!(out, "z_{} = {}", z.element, z.value).unwrap();
    }
    writeln!(out, "product = {}", report.product).unwrap();
    out
}

/// Largest index used by [`cross_check`] for the block reduction.
pub const CROSS_CHECK_BLOCK_INDEX: usize = 4;

/// Abelian subgroups of a Cayley group, found by closing up from the trivial
/// subgroup one element at a time.
pub fn abelian_subgroups(group: &CayleyGroup) -> Vec<Vec<usize>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let trivial = vec![group.identity()];
    seen.insert(trivial.clone());
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for g in 0..group.size() {
            if h.contains(&g) {
                continue;
            }
            let mut gens = h.clone();
            gens.push(g);
            let bigger = group.closure(&gens);
            if group.is_abelian_subset(&bigger) && seen.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Evaluates `Theta_G(a)` by every applicable route and checks they agree:
/// elimination, the character product, the factorization through every
/// subgroup (abelian groups), and the block reduction to every abelian
/// subgroup of index at most [`CROSS_CHECK_BLOCK_INDEX`].
pub fn cross_check(spec: &GroupSpec, a: &[i64]) -> Result<BigInt> {
    let cayley = spec.cayley();
    let value = eval_bareiss(&cayley, a)?;
    let disagree = |route: &str, got: &BigInt| {
        Error::Inconsistent(format!("{route} gives {got}, elimination gives {value} on {spec} at {a:?}"))
    };
    if let Some(group) = spec.abelian() {
        let d = eval_dedekind(group, a)?;
        if d != value {
            return Err(disagree("character product", &d));
        }
        for h in all_subgroups(group) {
            let r = eval_via_subgroup(&h, a)?;
            if r.product != value {
                return Err(disagree(&format!("factorization through {:?}", h.elements()), &r.product));
            }
        }
    }
    for h in abelian_subgroups(&cayley) {
        if cayley.size() / h.len() <= CROSS_CHECK_BLOCK_INDEX {
            let b = block_determinant(&cayley, &h, a)?;
            if b != value {
                return Err(disagree(&format!("block reduction to {h:?}"), &b));
            }
        }
    }
    Ok(value)
}
