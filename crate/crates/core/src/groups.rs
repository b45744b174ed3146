//! Finite abelian groups `C_{n_1} x ... x C_{n_k}`, their subgroups,
//! quotients and characters, plus Cayley-table groups for the determinant
//! oracle.
//!
//! Elements are addressed by index. The index of `(g_1, ..., g_k)` is
//! `g_1 + n_1 g_2 + n_1 n_2 g_3 + ...`, so for `C8 x C2` the element
//! `(r, s)` has index `r + 8 s` and the identity is always index 0.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest Cayley table for which associativity is checked exhaustively.
const ASSOCIATIVITY_CHECK_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Group {
    orders: Vec<u32>,
    strides: Vec<usize>,
    size: usize,
    exponent: u32,
}

impl Group {
    /// `C_{n_1} x ... x C_{n_k}`. An empty list gives the trivial group.
    pub fn new(orders: &[u32]) -> Result<Group> {
        if let Some(&bad) = orders.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidGroup(format!("cyclic factor of order {bad}")));
        }
        let mut strides = Vec::with_capacity(orders.len());
        let mut size = 1usize;
        for &n in orders {
            strides.push(size);
            size = size
                .checked_mul(n as usize)
                .ok_or_else(|| Error::InvalidGroup("group order overflows".into()))?;
        }
        let exponent = orders.iter().fold(1u32, |acc, &n| acc.lcm(&n));
        Ok(Group { orders: orders.to_vec(), strides, size, exponent })
    }

    pub fn cyclic(n: u32) -> Result<Group> {
        Group::new(&[n])
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Least common multiple of the cyclic orders.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn coords(&self, g: usize) -> Vec<u32> {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| ((g / s) % n as usize) as u32)
            .collect()
    }

    pub fn index(&self, coords: &[u32]) -> Result<usize> {
        if coords.len() != self.orders.len() {
            return Err(Error::InvalidGroup(format!(
                "element has {} coordinates, group has rank {}",
                coords.len(),
                self.orders.len()
            )));
        }
        Ok(coords
            .iter()
            .zip(&self.orders)
            .zip(&self.strides)
            .map(|((&c, &n), &s)| (c % n) as usize * s)
            .sum())
    }

    pub fn check_element(&self, g: usize) -> Result<()> {
        if g < self.size {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange(g, self.size))
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let n = n as usize;
            let x = (a / s) % n + (b / s) % n;
            out += (x % n) * s;
        }
        out
    }

    pub fn inv(&self, a: usize) -> usize {
        let mut out = 0;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let n = n as usize;
            out += ((n - (a / s) % n) % n) * s;
        }
        out
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut out = 0;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let n = n as u64;
            let x = ((a / s) as u64 % n) * (k % n) % n;
            out += x as usize * s;
        }
        out
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.coords(a)
            .iter()
            .zip(&self.orders)
            .fold(1u32, |acc, (&c, &n)| acc.lcm(&(n / c.gcd(&n))))
    }

    pub fn character(&self, index: usize) -> Character {
        Character { exponents: self.coords(index) }
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        self.elements().map(|i| self.character(i))
    }

    /// Exponent `k` with `chi(g) = zeta_N^k`, where `N` is the group exponent
    /// and `chi` is the character with index `chi`.
    pub fn character_exponent(&self, chi: usize, g: usize) -> u32 {
        let big_n = self.exponent as u64;
        let mut acc = 0u64;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let nn = n as usize;
            let a = ((chi / s) % nn) as u64;
            let x = ((g / s) % nn) as u64;
            acc += a * x * (big_n / n as u64);
        }
        (acc % big_n) as u32
    }

    /// Row `chi` holds `k` with `chi(g) = zeta_N^k` for every `g`.
    pub fn character_table(&self) -> Vec<Vec<u32>> {
        self.elements()
            .map(|chi| self.elements().map(|g| self.character_exponent(chi, g)).collect())
            .collect()
    }

    pub fn cayley(&self) -> CayleyGroup {
        let m = self.size;
        let mut table = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                table.push(self.mul(a, b));
            }
        }
        CayleyGroup::from_table_unchecked(m, table, 0)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "C1");
        }
        let parts: Vec<String> = self.orders.iter().map(|n| format!("C{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// A character, stored by its exponent vector `(a_1, ..., a_k)`:
/// `chi(g) = zeta_N^{sum a_i g_i N / n_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub exponents: Vec<u32>,
}

impl Character {
    pub fn index(&self, group: &Group) -> usize {
        group.index(&self.exponents).expect("character rank matches group")
    }

    pub fn exponent_at(&self, group: &Group, g: usize) -> u32 {
        group.character_exponent(self.index(group), g)
    }
}

/// A subgroup stored as an explicit sorted element set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    group: Group,
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validates that `elements` is closed under the group law.
    pub fn new(group: &Group, elements: &[usize]) -> Result<Subgroup> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        for &g in &set {
            group.check_element(g)?;
        }
        if !set.contains(&group.identity()) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for &a in &set {
            if !set.contains(&group.inv(a)) {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &set {
                if !set.contains(&group.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!("{a} * {b} missing")));
                }
            }
        }
        Ok(Subgroup { group: group.clone(), elements: set.into_iter().collect() })
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(group: &Group, gens: &[usize]) -> Result<Subgroup> {
        for &g in gens {
            group.check_element(g)?;
        }
        let mut set = BTreeSet::from([group.identity()]);
        let mut queue: VecDeque<usize> = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = group.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Ok(Subgroup { group: group.clone(), elements: set.into_iter().collect() })
    }

    pub fn whole(group: &Group) -> Subgroup {
        Subgroup { group: group.clone(), elements: group.elements().collect() }
    }

    pub fn trivial(group: &Group) -> Subgroup {
        Subgroup { group: group.clone(), elements: vec![group.identity()] }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.group.size() / self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Position of `g` inside the sorted element list.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }
}

/// Every subgroup of `group`, sorted by order and then by element list.
pub fn all_subgroups(group: &Group) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let trivial = Subgroup::trivial(group);
    seen.insert(trivial.elements.clone());
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for g in group.elements() {
            if h.contains(g) {
                continue;
            }
            let mut gens = h.elements.clone();
            gens.push(g);
            let bigger = Subgroup::closure(group, &gens).expect("elements are in range");
            if seen.insert(bigger.elements.clone()) {
                frontier.push(bigger);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen
        .into_iter()
        .map(|elements| Subgroup { group: group.clone(), elements })
        .collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    out
}

/// `G/H` with a transversal `T` and a total coset lookup.
#[derive(Clone, Debug)]
pub struct Quotient {
    subgroup: Subgroup,
    transversal: Vec<usize>,
    coset_of: Vec<usize>,
}

impl Quotient {
    /// Uses the smallest element index of each coset as its representative.
    pub fn new(subgroup: &Subgroup) -> Quotient {
        let group = subgroup.group();
        let mut coset_of = vec![usize::MAX; group.size()];
        let mut transversal = Vec::with_capacity(subgroup.index());
        for g in group.elements() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let label = transversal.len();
            transversal.push(g);
            for &h in subgroup.elements() {
                coset_of[group.mul(g, h)] = label;
            }
        }
        Quotient { subgroup: subgroup.clone(), transversal, coset_of }
    }

    /// Replaces the default representatives; exactly one per coset is required.
    pub fn with_transversal(subgroup: &Subgroup, reps: &[usize]) -> Result<Quotient> {
        let base = Quotient::new(subgroup);
        if reps.len() != base.transversal.len() {
            return Err(Error::InvalidTransversal(format!(
                "expected {} representatives, got {}",
                base.transversal.len(),
                reps.len()
            )));
        }
        let mut hit = vec![false; reps.len()];
        let mut ordered = vec![0; reps.len()];
        for &t in reps {
            subgroup.group().check_element(t)?;
            let c = base.coset_of[t];
            if hit[c] {
                return Err(Error::InvalidTransversal(format!("two representatives in coset of {t}")));
            }
            hit[c] = true;
            ordered[c] = t;
        }
        Ok(Quotient { subgroup: subgroup.clone(), transversal: ordered, coset_of: base.coset_of })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    /// Index into the transversal of the coset containing `g`.
    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    /// The coset `t H` as a list of elements `t h`, in the order of `H`.
    pub fn coset(&self, label: usize) -> Vec<usize> {
        let group = self.subgroup.group();
        let t = self.transversal[label];
        self.subgroup.elements().iter().map(|&h| group.mul(t, h)).collect()
    }

    pub fn len(&self) -> usize {
        self.transversal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transversal.is_empty()
    }
}

/// `G^ = disjoint union over chi in X of chi * G^_H`.
#[derive(Clone, Debug)]
pub struct CharacterDecomposition {
    subgroup: Subgroup,
    trivial_on_subgroup: Vec<usize>,
    transversal: Vec<usize>,
}

impl CharacterDecomposition {
    /// Picks the smallest character index of each class as representative.
    pub fn new(subgroup: &Subgroup) -> CharacterDecomposition {
        let group = subgroup.group();
        let trivial_on_subgroup: Vec<usize> = group
            .elements()
            .filter(|&chi| subgroup.elements().iter().all(|&h| group.character_exponent(chi, h) == 0))
            .collect();
        let mut covered = vec![false; group.size()];
        let mut transversal = Vec::new();
        for chi in group.elements() {
            if covered[chi] {
                continue;
            }
            transversal.push(chi);
            for &psi in &trivial_on_subgroup {
                covered[group.mul(chi, psi)] = true;
            }
        }
        CharacterDecomposition { subgroup: subgroup.clone(), trivial_on_subgroup, transversal }
    }

    /// Replaces `X`; exactly one character per class of `G^ / G^_H` is required.
    pub fn with_transversal(subgroup: &Subgroup, reps: &[usize]) -> Result<CharacterDecomposition> {
        let base = CharacterDecomposition::new(subgroup);
        let group = subgroup.group();
        if reps.len() != base.transversal.len() {
            return Err(Error::InvalidTransversal(format!(
                "expected {} characters, got {}",
                base.transversal.len(),
                reps.len()
            )));
        }
        let class_of = base.class_lookup();
        let mut hit = vec![false; base.transversal.len()];
        for &chi in reps {
            group.check_element(chi)?;
            let c = class_of[chi];
            if hit[c] {
                return Err(Error::InvalidTransversal(format!("two characters in the class of {chi}")));
            }
            hit[c] = true;
        }
        Ok(CharacterDecomposition { transversal: reps.to_vec(), ..base })
    }

    fn class_lookup(&self) -> Vec<usize> {
        let group = self.subgroup.group();
        let mut class_of = vec![0; group.size()];
        for (c, &chi) in self.transversal.iter().enumerate() {
            for &psi in &self.trivial_on_subgroup {
                class_of[group.mul(chi, psi)] = c;
            }
        }
        class_of
    }

    /// All characters sharing a class, as lists of character indices.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let group = self.subgroup.group();
        self.transversal
            .iter()
            .map(|&chi| self.trivial_on_subgroup.iter().map(|&psi| group.mul(chi, psi)).collect())
            .collect()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Characters trivial on `H`, which are the characters of `G/H`.
    pub fn trivial_on_subgroup(&self) -> &[usize] {
        &self.trivial_on_subgroup
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }
}

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyGroup {
    size: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl CayleyGroup {
    /// Validates the Latin-square property, an identity, inverses and
    /// (up to 64 elements) associativity.
    pub fn new(size: usize, table: Vec<usize>) -> Result<CayleyGroup> {
        if size == 0 || table.len() != size * size {
            return Err(Error::InvalidGroup("table must be a non-empty square".into()));
        }
        if table.iter().any(|&x| x >= size) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        for i in 0..size {
            let mut row = vec![false; size];
            let mut col = vec![false; size];
            for j in 0..size {
                row[table[i * size + j]] = true;
                col[table[j * size + i]] = true;
            }
            if row.iter().chain(&col).any(|&seen| !seen) {
                return Err(Error::InvalidGroup(format!("row or column {i} is not a permutation")));
            }
        }
        let identity = (0..size)
            .find(|&e| (0..size).all(|x| table[e * size + x] == x && table[x * size + e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        if size <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..size {
                for b in 0..size {
                    let ab = table[a * size + b];
                    for c in 0..size {
                        if table[ab * size + c] != table[a * size + table[b * size + c]] {
                            return Err(Error::InvalidGroup(format!("({a}{b}){c} != {a}({b}{c})")));
                        }
                    }
                }
            }
        }
        Ok(CayleyGroup::from_table_unchecked(size, table, identity))
    }

    fn from_table_unchecked(size: usize, table: Vec<usize>, identity: usize) -> CayleyGroup {
        let inverses = (0..size)
            .map(|a| (0..size).find(|&b| table[a * size + b] == identity).expect("latin square"))
            .collect();
        CayleyGroup { size, table, identity, inverses }
    }

    /// Closes a set of permutations of `{0..d}` under composition. Index 0
    /// is the identity; further elements are numbered in discovery order.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<CayleyGroup> {
        let degree = generators.first().map_or(1, Vec::len);
        for p in generators {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidGroup("generator is not a permutation".into()));
            }
        }
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&x| p[x]).collect() };
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next = compose(&elements[i], g);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        let m = elements.len();
        let mut table = Vec::with_capacity(m * m);
        for a in &elements {
            for b in &elements {
                table.push(index[&compose(a, b)]);
            }
        }
        CayleyGroup::new(m, table)
    }

    /// The dihedral group of the given order, acting on `order / 2` points
    /// through the rotation `r: i -> i + 1` and the reflection `s: i -> -i`.
    pub fn dihedral(order: usize) -> Result<CayleyGroup> {
        if order < 6 || !order.is_multiple_of(2) {
            return Err(Error::InvalidGroup(format!("dihedral order {order} must be even and at least 6")));
        }
        let k = order / 2;
        let r: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
        let s: Vec<usize> = (0..k).map(|i| (k - i) % k).collect();
        CayleyGroup::from_permutations(&[r, s])
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table_row(&self, a: usize) -> &[usize] {
        &self.table[a * self.size..(a + 1) * self.size]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| a < self.size && set.contains(&self.inv(a)))
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_abelian_subset(&self, elements: &[usize]) -> bool {
        elements.iter().all(|&a| elements.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Representatives of the left cosets `t H`, smallest index first in each.
    pub fn left_transversal(&self, subgroup: &[usize]) -> Vec<usize> {
        let mut covered = vec![false; self.size];
        let mut reps = Vec::new();
        for g in 0..self.size {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for &h in subgroup {
                covered[self.mul(g, h)] = true;
            }
        }
        reps
    }

    /// The subgroup on `elements` as a group of its own, indexed by position
    /// in `elements`.
    pub fn restrict(&self, elements: &[usize]) -> Result<CayleyGroup> {
        if !self.is_subgroup(elements) {
            return Err(Error::NotSubgroup("element set is not closed".into()));
        }
        let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let m = elements.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in elements {
            for &b in elements {
                table.push(pos[&self.mul(a, b)]);
            }
        }
        CayleyGroup::new(m, table)
    }

    /// Reindexes the group through `perm`: new element `i` is old element `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<CayleyGroup> {
        let mut back = vec![usize::MAX; self.size];
        for (i, &old) in perm.iter().enumerate() {
            back[old] = i;
        }
        if perm.len() != self.size || back.contains(&usize::MAX) {
            return Err(Error::InvalidGroup("relabelling is not a permutation".into()));
        }
        let mut table = Vec::with_capacity(self.size * self.size);
        for &a in perm {
            for &b in perm {
                table.push(back[self.mul(a, b)]);
            }
        }
        CayleyGroup::new(self.size, table)
    }
}

/// A group named on the command line: an abelian product or a dihedral group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Abelian(Group),
    Dihedral(usize),
}

impl GroupSpec {
    /// Parses `C8xC2`, `C4`, `C2^4`, `D16` (case-insensitive).
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let err = || Error::GroupSpec(text.to_string());
        let s = text.trim().to_ascii_lowercase();
        if let Some(rest) = s.strip_prefix('d') {
            let order: usize = rest.parse().map_err(|_| err())?;
            CayleyGroup::dihedral(order)?;
            return Ok(GroupSpec::Dihedral(order));
        }
        let mut orders = Vec::new();
        for part in s.split('x') {
            let part = part.trim().strip_prefix('c').ok_or_else(err)?;
            let (base, reps) = match part.split_once('^') {
                Some((b, r)) => (b, r.parse::<usize>().map_err(|_| err())?),
                None => (part, 1),
            };
            let n: u32 = base.parse().map_err(|_| err())?;
            if n == 0 || reps == 0 {
                return Err(err());
            }
            orders.extend(std::iter::repeat_n(n, reps));
        }
        Ok(GroupSpec::Abelian(Group::new(&orders)?))
    }

    pub fn size(&self) -> usize {
        match self {
            GroupSpec::Abelian(g) => g.size(),
            GroupSpec::Dihedral(n) => *n,
        }
    }

    pub fn cayley(&self) -> CayleyGroup {
        match self {
            GroupSpec::Abelian(g) => g.cayley(),
            GroupSpec::Dihedral(n) => CayleyGroup::dihedral(*n).expect("validated at parse"),
        }
    }

    pub fn abelian(&self) -> Option<&Group> {
        match self {
            GroupSpec::Abelian(g) => Some(g),
            GroupSpec::Dihedral(_) => None,
        }
    }

    pub fn is_c8xc2(&self) -> bool {
        matches!(self, GroupSpec::Abelian(g) if g.orders() == [8, 2])
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Abelian(g) => write!(f, "{g}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
        }
    }
}
