//! Ground systems: a finite carrier with addition, multiplication, a
//! distinguished tangible subset, a negation map, and a surpassing
//! relation, together with exhaustive axiom verification.

use crate::bits::{BitGrid, Bits};
use crate::{Error, Result};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

static NEXT_SYSTEM_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_system_id() -> u64 {
    NEXT_SYSTEM_ID.fetch_add(1, Ordering::Relaxed)
}

/// An element of a ground system: the owning system's id plus a code
/// indexing the carrier. Equality is equality of `(system, code)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Element {
    pub(crate) sys: u64,
    pub(crate) code: u32,
}

impl Element {
    pub fn code(&self) -> usize {
        self.code as usize
    }
}

/// How a system was built. `Symmetrized` and `BipotentSymmetrized` carry
/// the base carrier size so pair structure can be recovered.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SystemKind {
    Boolean,
    SupertropicalChain { n: usize },
    TruncatedMaxPlus { n: usize },
    Symmetrized { base: u64, base_size: usize },
    BipotentSymmetrized { base: u64, base_size: usize },
    Custom,
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemKind::Boolean => write!(f, "boolean"),
            SystemKind::SupertropicalChain { n } => write!(f, "supertropical({n})"),
            SystemKind::TruncatedMaxPlus { n } => write!(f, "maxplus({n})"),
            SystemKind::Symmetrized { .. } => write!(f, "symmetrized"),
            SystemKind::BipotentSymmetrized { .. } => write!(f, "bipotent-symmetrized"),
            SystemKind::Custom => write!(f, "custom"),
        }
    }
}

/// A ground system: carrier, addition and multiplication tables, tangible
/// subset, negation table, and the surpassing relation as a precomputed
/// boolean table. Immutable after construction.
pub struct GroundSystem {
    id: u64,
    kind: SystemKind,
    labels: Vec<String>,
    zero: usize,
    one: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    tangible: Bits,
    surpass: BitGrid,
    quasi: Vec<u32>,
    null: Bits,
}

impl fmt::Debug for GroundSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroundSystem({}, {} elements)", self.kind, self.size())
    }
}

/// Raw tables for [`GroundSystem::custom`]. The surpassing relation may be
/// given explicitly or derived from the quasi-zero rule.
pub struct RawTables {
    pub labels: Vec<String>,
    pub zero: usize,
    pub one: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
    pub tangibles: Vec<usize>,
    /// `None` derives the relation from `a + b° = c`.
    pub surpass: Option<Vec<Vec<bool>>>,
}

impl GroundSystem {
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn kind(&self) -> &SystemKind {
        &self.kind
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, code: usize) -> &str {
        &self.labels[code]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn el(&self, code: usize) -> Element {
        assert!(code < self.size(), "element code out of range");
        Element {
            sys: self.id,
            code: code as u32,
        }
    }

    pub fn element_by_label(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label).map(|c| self.el(c))
    }

    pub fn check(&self, e: Element) -> Result<usize> {
        if e.sys != self.id {
            return Err(Error::CrossSystem);
        }
        Ok(e.code as usize)
    }

    pub fn zero(&self) -> Element {
        self.el(self.zero)
    }

    pub fn one(&self) -> Element {
        self.el(self.one)
    }

    pub fn zero_code(&self) -> usize {
        self.zero
    }

    pub fn one_code(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add_c(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size() + b] as usize
    }

    #[inline]
    pub fn mul_c(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size() + b] as usize
    }

    #[inline]
    pub fn neg_c(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// `a (-) b`, that is `a + ((-)b)`.
    #[inline]
    pub fn sub_c(&self, a: usize, b: usize) -> usize {
        self.add_c(a, self.neg_c(b))
    }

    /// The quasi-zero `b°  =  b (-) b`.
    #[inline]
    pub fn quasi_c(&self, a: usize) -> usize {
        self.quasi[a] as usize
    }

    #[inline]
    pub fn is_tangible_c(&self, a: usize) -> bool {
        self.tangible.get(a)
    }

    /// `a ⪯ b` from the precomputed table.
    #[inline]
    pub fn surpass_c(&self, a: usize, b: usize) -> bool {
        self.surpass.get(a, b)
    }

    /// `a ⪰ 𝟘`.
    #[inline]
    pub fn is_null_c(&self, a: usize) -> bool {
        self.null.get(a)
    }

    pub fn tangibles(&self) -> impl Iterator<Item = usize> + '_ {
        self.tangible.iter()
    }

    pub fn tangible_set(&self) -> &Bits {
        &self.tangible
    }

    pub fn add(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.el(self.add_c(self.check(a)?, self.check(b)?)))
    }

    pub fn mul(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.el(self.mul_c(self.check(a)?, self.check(b)?)))
    }

    pub fn neg(&self, a: Element) -> Result<Element> {
        Ok(self.el(self.neg_c(self.check(a)?)))
    }

    /// `b°  =  b + (-)b`.
    pub fn quasi_zero(&self, a: Element) -> Result<Element> {
        Ok(self.el(self.quasi_c(self.check(a)?)))
    }

    pub fn surpass(&self, a: Element, b: Element) -> Result<bool> {
        Ok(self.surpass_c(self.check(a)?, self.check(b)?))
    }

    /// `b ⪰ 𝟘`, membership in the null set.
    pub fn is_null(&self, a: Element) -> Result<bool> {
        Ok(self.is_null_c(self.check(a)?))
    }

    /// `b₁ ∇ b₂`: the balance relation, `b₁ (-) b₂ ⪰ 𝟘`.
    pub fn balances(&self, a: Element, b: Element) -> Result<bool> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(self.balances_c(a, b))
    }

    #[inline]
    pub fn balances_c(&self, a: usize, b: usize) -> bool {
        self.is_null_c(self.sub_c(a, b))
    }

    /// The set of quasi-zeros `𝒜°`.
    pub fn quasi_zero_set(&self) -> Bits {
        let mut s = Bits::new(self.size());
        for a in 0..self.size() {
            s.set(self.quasi_c(a));
        }
        s
    }

    pub fn null_set(&self) -> &Bits {
        &self.null
    }

    /// First kind means the negation map is the identity.
    pub fn is_first_kind(&self) -> bool {
        (0..self.size()).all(|a| self.neg_c(a) == a)
    }

    /// `a + a' ∈ {a, a'}` whenever `a' ≠ (-)a`, over the whole carrier.
    pub fn is_bipotent(&self) -> bool {
        self.bipotent_witness().is_none()
    }

    pub fn bipotent_witness(&self) -> Option<(usize, usize)> {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                if b != self.neg_c(a) {
                    let s = self.add_c(a, b);
                    if s != a && s != b {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    /// `𝒜 = 𝒯 ∪ 𝒜°`.
    pub fn has_height_2(&self) -> bool {
        let quasi = self.quasi_zero_set();
        (0..self.size()).all(|a| self.is_tangible_c(a) || quasi.get(a))
    }

    /// `a + b ∈ 𝒯` for `a, b ∈ 𝒯` with `b ≠ (-)a`.
    pub fn is_metatangible(&self) -> bool {
        for a in self.tangibles() {
            for b in self.tangibles() {
                if b != self.neg_c(a) && !self.is_tangible_c(self.add_c(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Exhaustive transitivity check of the balance relation `∇`.
    pub fn verify_nabla_transitive(&self) -> bool {
        self.nabla_transitivity_witness().is_none()
    }

    /// First triple `(a, b, c)` with `a ∇ b` and `b ∇ c` but not `a ∇ c`,
    /// in carrier order, if one exists.
    ///
    /// Supertropical chains with at least one tangible always have one
    /// (for example tangible `0`, the top ghost, and that ghost's
    /// tangible), even though they are `(-)`-bipotent of height 2.
    pub fn nabla_transitivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        let mut nabla = BitGrid::new(n, n);
        for a in 0..n {
            for b in 0..n {
                if self.balances_c(a, b) {
                    nabla.set(a, b);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !nabla.get(a, b) {
                    continue;
                }
                for c in 0..n {
                    if nabla.get(b, c) && !nabla.get(a, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// For chain-shaped carriers (supertropical and truncated max-plus),
    /// the `(value, ghost)` decomposition of an element; `None` for zero.
    pub fn chain_value(&self, code: usize) -> Option<(usize, bool)> {
        match self.kind {
            SystemKind::SupertropicalChain { n } => {
                let m = n + 1;
                if code == 0 {
                    None
                } else if code <= m {
                    Some((code - 1, false))
                } else {
                    Some((code - 1 - m, true))
                }
            }
            SystemKind::TruncatedMaxPlus { .. } => {
                if code == 0 {
                    None
                } else {
                    Some((code - 1, false))
                }
            }
            _ => None,
        }
    }

    /// Total chain order on chain-shaped carriers: zero first, then by
    /// value with the tangible below its ghost.
    pub fn chain_leq(&self, a: usize, b: usize) -> bool {
        let key = |c: usize| match self.chain_value(c) {
            None => (0usize, 0usize, 0usize),
            Some((v, g)) => (1, v, g as usize),
        };
        key(a) <= key(b)
    }

    /// The Boolean semifield `{𝟘, 𝟙}` with `𝟙 + 𝟙 = 𝟙`, identity negation,
    /// and the quasi-zero surpassing relation.
    pub fn boolean() -> Arc<GroundSystem> {
        let labels = vec!["0".to_string(), "1".to_string()];
        let add = vec![vec![0, 1], vec![1, 1]];
        let mul = vec![vec![0, 0], vec![0, 1]];
        let neg = vec![0, 1];
        Self::from_parts(
            SystemKind::Boolean,
            labels,
            0,
            1,
            add,
            mul,
            neg,
            vec![1],
            None,
        )
        .expect("boolean tables are total")
    }

    /// The supertropical chain with tangibles `0..=n` (label `k`), their
    /// ghosts (label `kv`), and zero (label `z`). Addition takes the
    /// larger value, with equal tangibles collapsing to the ghost layer;
    /// multiplication adds values, truncated at `n`, and absorbs ghosts.
    pub fn supertropical_chain(n: usize) -> Arc<GroundSystem> {
        // codes: 0 -> z, 1..=n+1 -> tangible k = code-1, n+2..=2n+2 -> ghost
        let m = n + 1;
        let size = 1 + 2 * m;
        let value = |c: usize| -> Option<(usize, bool)> {
            if c == 0 {
                None
            } else if c <= m {
                Some((c - 1, false))
            } else {
                Some((c - 1 - m, true))
            }
        };
        let code = |v: usize, ghost: bool| -> usize {
            if ghost {
                1 + m + v
            } else {
                1 + v
            }
        };
        let mut labels = vec!["z".to_string()];
        for k in 0..m {
            labels.push(format!("{k}"));
        }
        for k in 0..m {
            labels.push(format!("{k}v"));
        }
        let mut add = vec![vec![0; size]; size];
        let mut mul = vec![vec![0; size]; size];
        for a in 0..size {
            for b in 0..size {
                add[a][b] = match (value(a), value(b)) {
                    (None, _) => b,
                    (_, None) => a,
                    (Some((va, _)), Some((vb, _))) => {
                        if va > vb {
                            a
                        } else if vb > va {
                            b
                        } else {
                            // rewritten below: equal values collapse to ghost
                            code(va, true)
                        }
                    }
                };
                // overflow past n lands in the ghost layer; this is the
                // quotient of the untruncated supertropical semiring by
                // the congruence collapsing all values above n into nv,
                // and it is what keeps multiplication distributive over
                // the ghost-collapsing addition
                mul[a][b] = match (value(a), value(b)) {
                    (None, _) | (_, None) => 0,
                    (Some((va, ga)), Some((vb, gb))) => {
                        code((va + vb).min(n), ga || gb || va + vb > n)
                    }
                };
            }
        }
        // equal-value addition: t + t = ghost, anything involving a ghost
        // stays ghost; rewrite that cell explicitly for clarity
        for a in 0..size {
            for b in 0..size {
                if let (Some((va, _)), Some((vb, _))) = (value(a), value(b)) {
                    if va == vb {
                        add[a][b] = code(va, true);
                    }
                }
            }
        }
        let neg = (0..size).collect();
        let tangibles = (1..=m).collect();
        Self::from_parts(
            SystemKind::SupertropicalChain { n },
            labels,
            0,
            1,
            add,
            mul,
            neg,
            tangibles,
            None,
        )
        .expect("supertropical tables are total")
    }

    /// The bipotent chain `{𝟘, 0..=n}` with `max` addition and truncated
    /// integer addition as multiplication. Not a system (its surpassing
    /// relation fails the tangible-equality axiom); it is the raw ordered
    /// input for the bipotent symmetrization.
    pub fn truncated_max_plus(n: usize) -> Arc<GroundSystem> {
        let m = n + 1;
        let size = 1 + m;
        let mut labels = vec!["z".to_string()];
        for k in 0..m {
            labels.push(format!("{k}"));
        }
        let mut add = vec![vec![0; size]; size];
        let mut mul = vec![vec![0; size]; size];
        for a in 0..size {
            for b in 0..size {
                add[a][b] = a.max(b); // codes are ordered: z < 0 < 1 < ...
                mul[a][b] = if a == 0 || b == 0 {
                    0
                } else {
                    ((a - 1) + (b - 1)).min(n) + 1
                };
            }
        }
        let neg = (0..size).collect();
        let tangibles = (1..=m).collect();
        Self::from_parts(
            SystemKind::TruncatedMaxPlus { n },
            labels,
            0,
            1,
            add,
            mul,
            neg,
            tangibles,
            None,
        )
        .expect("max-plus tables are total")
    }

    /// Construct a system from explicit tables without validating any
    /// axioms; validation is a separate step ([`GroundSystem::verify_axioms`]).
    pub fn custom(t: RawTables) -> Result<Arc<GroundSystem>> {
        let n = t.labels.len();
        if n == 0 {
            return Err(Error::Invalid("empty carrier".into()));
        }
        let check_table = |tab: &[Vec<usize>], name: &str| -> Result<()> {
            if tab.len() != n {
                return Err(Error::Shape(format!("{name} table has {} rows, carrier has {n}", tab.len())));
            }
            for (i, row) in tab.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::Shape(format!("{name} table row {i} has {} entries, carrier has {n}", row.len())));
                }
                for &v in row {
                    if v >= n {
                        return Err(Error::Shape(format!("{name} table entry {v} out of range")));
                    }
                }
            }
            Ok(())
        };
        check_table(&t.add, "add")?;
        check_table(&t.mul, "mul")?;
        if t.neg.len() != n || t.neg.iter().any(|&v| v >= n) {
            return Err(Error::Shape("neg table must be total over the carrier".into()));
        }
        if t.zero >= n || t.one >= n {
            return Err(Error::Shape("zero/one out of range".into()));
        }
        if t.tangibles.iter().any(|&v| v >= n) {
            return Err(Error::Shape("tangible entry out of range".into()));
        }
        if let Some(s) = &t.surpass {
            if s.len() != n || s.iter().any(|r| r.len() != n) {
                return Err(Error::Shape("surpass table must be n x n".into()));
            }
        }
        Self::from_parts(
            SystemKind::Custom,
            t.labels,
            t.zero,
            t.one,
            t.add,
            t.mul,
            t.neg,
            t.tangibles,
            t.surpass,
        )
    }

    pub(crate) fn from_parts(
        kind: SystemKind,
        labels: Vec<String>,
        zero: usize,
        one: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        neg: Vec<usize>,
        tangibles: Vec<usize>,
        surpass: Option<Vec<Vec<bool>>>,
    ) -> Result<Arc<GroundSystem>> {
        let n = labels.len();
        let flat = |t: Vec<Vec<usize>>| -> Vec<u32> {
            t.into_iter().flatten().map(|v| v as u32).collect()
        };
        let add = flat(add);
        let mul = flat(mul);
        let neg: Vec<u32> = neg.into_iter().map(|v| v as u32).collect();
        let mut quasi = vec![0u32; n];
        for a in 0..n {
            quasi[a] = add[a * n + neg[a] as usize];
        }
        let surpass_grid = match surpass {
            Some(rows) => {
                let mut g = BitGrid::new(n, n);
                for (r, row) in rows.iter().enumerate() {
                    for (c, &v) in row.iter().enumerate() {
                        if v {
                            g.set(r, c);
                        }
                    }
                }
                g
            }
            None => {
                // a ⪯ c  iff  a + b° = c for some b
                let mut g = BitGrid::new(n, n);
                let mut quasis: Vec<usize> = quasi.iter().map(|&q| q as usize).collect();
                quasis.sort_unstable();
                quasis.dedup();
                for a in 0..n {
                    for &q in &quasis {
                        g.set(a, add[a * n + q] as usize);
                    }
                }
                g
            }
        };
        let mut null = Bits::new(n);
        for b in 0..n {
            if surpass_grid.get(zero, b) {
                null.set(b);
            }
        }
        let tangible = Bits::from_indices(n, tangibles);
        Ok(Arc::new(GroundSystem {
            id: fresh_system_id(),
            kind,
            labels,
            zero,
            one,
            add,
            mul,
            neg,
            tangible,
            surpass: surpass_grid,
            quasi,
            null,
        }))
    }

    /// Exhaustively check every ground-system axiom. Failures are data:
    /// the report records a pass/fail per axiom with a first
    /// counterexample. `all_required_pass` covers the pseudo-system
    /// axioms; tangible/quasi-zero disjointness is recorded separately as
    /// the triple classification, which idempotent first-kind carriers
    /// (for example the Boolean semifield) do not satisfy.
    pub fn verify_axioms(&self) -> SystemReport {
        let n = self.size();
        let mut checks = Vec::new();
        let lab = |c: usize| self.labels[c].clone();
        let mut push = |name: &str, witness: Option<Vec<usize>>| {
            checks.push(Check {
                name: name.to_string(),
                pass: witness.is_none(),
                witness: witness.map(|w| w.into_iter().map(lab).collect()),
            });
        };

        // additive commutative monoid
        let mut w = None;
        'c0: for a in 0..n {
            for b in 0..n {
                if self.add_c(a, b) != self.add_c(b, a) {
                    w = Some(vec![a, b]);
                    break 'c0;
                }
            }
        }
        push("add-commutative", w);
        let mut w = None;
        'c1: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.add_c(self.add_c(a, b), c) != self.add_c(a, self.add_c(b, c)) {
                        w = Some(vec![a, b, c]);
                        break 'c1;
                    }
                }
            }
        }
        push("add-associative", w);
        let w = (0..n)
            .find(|&a| self.add_c(self.zero, a) != a || self.add_c(a, self.zero) != a)
            .map(|a| vec![a]);
        push("zero-additive-identity", w);

        // multiplicative monoid with absorbing zero, distributivity
        let mut w = None;
        'c2: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul_c(self.mul_c(a, b), c) != self.mul_c(a, self.mul_c(b, c)) {
                        w = Some(vec![a, b, c]);
                        break 'c2;
                    }
                }
            }
        }
        push("mul-associative", w);
        let w = (0..n)
            .find(|&a| self.mul_c(self.one, a) != a || self.mul_c(a, self.one) != a)
            .map(|a| vec![a]);
        push("one-multiplicative-identity", w);
        let w = (0..n)
            .find(|&a| self.mul_c(self.zero, a) != self.zero || self.mul_c(a, self.zero) != self.zero)
            .map(|a| vec![a]);
        push("zero-absorbs", w);
        let mut w = None;
        'c3: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul_c(a, self.add_c(b, c)) != self.add_c(self.mul_c(a, b), self.mul_c(a, c))
                        || self.mul_c(self.add_c(a, b), c)
                            != self.add_c(self.mul_c(a, c), self.mul_c(b, c))
                    {
                        w = Some(vec![a, b, c]);
                        break 'c3;
                    }
                }
            }
        }
        push("distributive", w);

        // negation map: additive isomorphism of order <= 2, fixing zero,
        // compatible with multiplication on both sides
        let w = (0..n)
            .find(|&a| self.neg_c(self.neg_c(a)) != a)
            .map(|a| vec![a]);
        push("neg-order-2", w);
        let mut w = None;
        'c4: for a in 0..n {
            for b in 0..n {
                if self.neg_c(self.add_c(a, b)) != self.add_c(self.neg_c(a), self.neg_c(b)) {
                    w = Some(vec![a, b]);
                    break 'c4;
                }
            }
        }
        push("neg-additive", w);
        let w = if self.neg_c(self.zero) != self.zero {
            Some(vec![self.zero])
        } else {
            None
        };
        push("neg-zero", w);
        let mut w = None;
        'c5: for a in 0..n {
            for b in 0..n {
                let m = self.mul_c(a, b);
                if self.mul_c(self.neg_c(a), b) != self.neg_c(m)
                    || self.mul_c(a, self.neg_c(b)) != self.neg_c(m)
                {
                    w = Some(vec![a, b]);
                    break 'c5;
                }
            }
        }
        push("neg-respects-action", w);
        let w = self
            .tangibles()
            .find(|&t| !self.is_tangible_c(self.neg_c(t)))
            .map(|t| vec![t]);
        push("neg-preserves-tangibles", w);

        // tangible set: excludes zero, generates additively with zero
        let w = if self.is_tangible_c(self.zero) {
            Some(vec![self.zero])
        } else {
            None
        };
        push("zero-not-tangible", w);
        let mut generated = Bits::new(n);
        generated.set(self.zero);
        for t in self.tangibles() {
            generated.set(t);
        }
        loop {
            let mut grew = false;
            let current: Vec<usize> = generated.iter().collect();
            for &a in &current {
                for &b in &current {
                    let s = self.add_c(a, b);
                    if !generated.get(s) {
                        generated.set(s);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let w = (0..n).find(|&a| !generated.get(a)).map(|a| vec![a]);
        push("tangibles-generate", w);

        // surpassing relation: partial preorder plus axioms (i)-(v)
        let w = (0..n).find(|&a| !self.surpass_c(a, a)).map(|a| vec![a]);
        push("surpass-reflexive", w);
        let mut w = None;
        'c6: for a in 0..n {
            for b in 0..n {
                if !self.surpass_c(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.surpass_c(b, c) && !self.surpass_c(a, c) {
                        w = Some(vec![a, b, c]);
                        break 'c6;
                    }
                }
            }
        }
        push("surpass-transitive", w);
        let w = (0..n)
            .find(|&c| !self.surpass_c(self.zero, self.quasi_c(c)))
            .map(|c| vec![c]);
        push("surpass-i-zero-below-quasi", w);
        let mut w = None;
        'c7: for a in 0..n {
            for b in 0..n {
                if self.surpass_c(a, b) && !self.surpass_c(self.neg_c(a), self.neg_c(b)) {
                    w = Some(vec![a, b]);
                    break 'c7;
                }
            }
        }
        push("surpass-ii-neg-monotone", w);
        let mut w = None;
        'c8: for a in 0..n {
            for b in 0..n {
                if !self.surpass_c(a, b) {
                    continue;
                }
                for c in 0..n {
                    for d in 0..n {
                        if self.surpass_c(c, d)
                            && !self.surpass_c(self.add_c(a, c), self.add_c(b, d))
                        {
                            w = Some(vec![a, b, c, d]);
                            break 'c8;
                        }
                    }
                }
            }
        }
        push("surpass-iii-add-monotone", w);
        let mut w = None;
        'c9: for t in self.tangibles() {
            for a in 0..n {
                for b in 0..n {
                    if self.surpass_c(a, b)
                        && !self.surpass_c(self.mul_c(t, a), self.mul_c(t, b))
                    {
                        w = Some(vec![t, a, b]);
                        break 'c9;
                    }
                }
            }
        }
        push("surpass-iv-scalar-monotone", w);
        let mut w = None;
        'c10: for a in self.tangibles() {
            for b in self.tangibles() {
                if a != b && self.surpass_c(a, b) {
                    w = Some(vec![a, b]);
                    break 'c10;
                }
            }
        }
        push("surpass-v-equality-on-tangibles", w);

        // uniquely negated: each tangible a has exactly one tangible b
        // with 𝟘 ⪯ a + b, namely (-)a
        let mut w = None;
        'c11: for a in self.tangibles() {
            let mut found = Vec::new();
            for b in self.tangibles() {
                if self.is_null_c(self.add_c(a, b)) {
                    found.push(b);
                }
            }
            if found.len() != 1 || found[0] != self.neg_c(a) {
                w = Some(vec![a]);
                break 'c11;
            }
        }
        push("uniquely-negated", w);

        let required = checks.clone();

        // classification: triple vs pseudo-triple
        let quasi_set = self.quasi_zero_set();
        let triple_witness = self
            .tangibles()
            .find(|&t| quasi_set.get(t))
            .map(|t| vec![self.labels[t].clone()]);
        let triple = Check {
            name: "triple-tangibles-disjoint-from-quasi-zeros".to_string(),
            pass: triple_witness.is_none(),
            witness: triple_witness,
        };

        SystemReport {
            required,
            triple,
        }
    }
}

/// One axiom check with an optional counterexample (element labels).
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<Vec<String>>,
}

/// Result of [`GroundSystem::verify_axioms`]: the pseudo-system axioms
/// (all must hold for the carrier to be usable), plus the triple
/// classification flag kept separate because first-kind idempotent
/// carriers are only pseudo-triples.
#[derive(Debug, Clone)]
pub struct SystemReport {
    pub required: Vec<Check>,
    pub triple: Check,
}

impl SystemReport {
    pub fn all_required_pass(&self) -> bool {
        self.required.iter().all(|c| c.pass)
    }

    pub fn is_triple(&self) -> bool {
        self.triple.pass
    }

    pub fn failed(&self) -> Vec<&Check> {
        self.required.iter().filter(|c| !c.pass).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.required
            .iter()
            .chain(std::iter::once(&self.triple))
            .find(|c| c.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_tables() {
        let b = GroundSystem::boolean();
        let one = b.one();
        assert_eq!(b.add(one, one).unwrap(), one);
        assert_eq!(b.neg(b.zero()).unwrap(), b.zero());
        // 𝟘 ⪯ 𝟙° = 𝟙
        let q = b.quasi_zero(one).unwrap();
        assert!(b.surpass(b.zero(), q).unwrap());
        assert_eq!(q, one);
    }

    #[test]
    fn boolean_report() {
        let b = GroundSystem::boolean();
        let r = b.verify_axioms();
        assert!(r.all_required_pass(), "failed: {:?}", r.failed());
        // identity negation on an idempotent carrier: quasi-zeros meet the
        // tangibles, so this is a pseudo-triple, not a triple
        assert!(!r.is_triple());
    }

    #[test]
    fn supertropical_basics() {
        let s = GroundSystem::supertropical_chain(0);
        // carrier z, 0, 0v
        assert_eq!(s.size(), 3);
        let unit = s.one();
        let ghost = s.quasi_zero(unit).unwrap();
        assert_eq!(s.label(ghost.code()), "0v");
        assert!(s.is_null(ghost).unwrap());
        assert!(!s.is_null(unit).unwrap());

        let s3 = GroundSystem::supertropical_chain(3);
        let t2 = s3.element_by_label("2").unwrap();
        // truncation: 2 * 2 saturates at value 3 and overflows into the
        // ghost layer
        assert_eq!(s3.mul(t2, t2).unwrap(), s3.element_by_label("3v").unwrap());
        let t1 = s3.element_by_label("1").unwrap();
        assert_eq!(s3.mul(t1, t2).unwrap(), s3.element_by_label("3").unwrap());
        // 2 ⪯ 2v since 2 + 2° = 2v
        let g2 = s3.element_by_label("2v").unwrap();
        assert!(s3.surpass(t2, g2).unwrap());
        assert!(!s3.surpass(g2, t2).unwrap());
    }

    #[test]
    fn supertropical_mul_associative_by_enumeration() {
        // oracle for the derived example: associativity of truncated
        // multiplication over n = 3, all triples
        let s = GroundSystem::supertropical_chain(3);
        let n = s.size();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(s.mul_c(s.mul_c(a, b), c), s.mul_c(a, s.mul_c(b, c)));
                }
            }
        }
    }

    #[test]
    fn supertropical_reports_pass() {
        for n in 0..=4 {
            let s = GroundSystem::supertropical_chain(n);
            let r = s.verify_axioms();
            assert!(r.all_required_pass(), "n={n} failed: {:?}", r.failed());
            assert!(r.is_triple(), "supertropical chains are genuine triples");
        }
    }

    #[test]
    fn supertropical_structure_predicates() {
        for n in 0..=4 {
            let s = GroundSystem::supertropical_chain(n);
            assert!(s.is_first_kind());
            assert!(s.is_bipotent());
            assert!(s.has_height_2());
            assert!(s.is_metatangible());
        }
    }

    #[test]
    fn nabla_not_transitive_on_supertropical_chains() {
        // pinned refutation: zero balances any ghost, every ghost
        // balances its own tangible, but zero never balances a tangible.
        // (z, 0v, 0) is the least witness in carrier order.
        let s = GroundSystem::supertropical_chain(1);
        let w = s.nabla_transitivity_witness().expect("witness exists");
        assert_eq!(
            (s.label(w.0), s.label(w.1), s.label(w.2)),
            ("z", "0v", "0")
        );
        // and a witness avoiding zero: a tangible, a dominating ghost,
        // and that ghost's tangible
        let t0 = s.element_by_label("0").unwrap();
        let g1 = s.element_by_label("1v").unwrap();
        let t1 = s.element_by_label("1").unwrap();
        assert!(s.balances(t0, g1).unwrap());
        assert!(s.balances(g1, t1).unwrap());
        assert!(!s.balances(t0, t1).unwrap());
        for n in 0..=4 {
            assert!(!GroundSystem::supertropical_chain(n).verify_nabla_transitive());
        }
    }

    #[test]
    fn nabla_transitive_on_boolean() {
        // the null set of the Boolean carrier is everything, so the
        // balance relation is full and trivially transitive
        assert!(GroundSystem::boolean().verify_nabla_transitive());
    }

    #[test]
    fn balance_examples() {
        let s = GroundSystem::supertropical_chain(2);
        let t1 = s.element_by_label("1").unwrap();
        let g1 = s.element_by_label("1v").unwrap();
        // 1 ∇ 1v: 1 (-) 1v = 1 + 1v = 1v, null
        assert!(s.balances(t1, g1).unwrap());
        assert!(s.is_null(g1).unwrap());
        let t2 = s.element_by_label("2").unwrap();
        assert!(!s.balances(t1, t2).unwrap());
    }

    #[test]
    fn custom_rejects_ragged_tables() {
        let bad = RawTables {
            labels: vec!["a".into(), "b".into()],
            zero: 0,
            one: 1,
            add: vec![vec![0, 1]],
            mul: vec![vec![0, 0], vec![0, 1]],
            neg: vec![0, 1],
            tangibles: vec![1],
            surpass: None,
        };
        assert!(GroundSystem::custom(bad).is_err());
    }

    #[test]
    fn custom_boolean_roundtrip() {
        let t = RawTables {
            labels: vec!["0".into(), "1".into()],
            zero: 0,
            one: 1,
            add: vec![vec![0, 1], vec![1, 1]],
            mul: vec![vec![0, 0], vec![0, 1]],
            neg: vec![0, 1],
            tangibles: vec![1],
            surpass: None,
        };
        let s = GroundSystem::custom(t).unwrap();
        let b = GroundSystem::boolean();
        assert_eq!(s.size(), b.size());
        for a in 0..2 {
            for c in 0..2 {
                assert_eq!(s.add_c(a, c), b.add_c(a, c));
                assert_eq!(s.mul_c(a, c), b.mul_c(a, c));
                assert_eq!(s.surpass_c(a, c), b.surpass_c(a, c));
            }
        }
    }

    #[test]
    fn custom_noncommutative_add_flagged_not_rejected() {
        // construction succeeds; verification reports the failure
        let t = RawTables {
            labels: vec!["0".into(), "1".into()],
            zero: 0,
            one: 1,
            add: vec![vec![0, 0], vec![1, 1]],
            mul: vec![vec![0, 0], vec![0, 1]],
            neg: vec![0, 1],
            tangibles: vec![1],
            surpass: None,
        };
        let s = GroundSystem::custom(t).unwrap();
        let r = s.verify_axioms();
        assert!(!r.all_required_pass());
        assert!(!r.check("add-commutative").unwrap().pass);
    }

    #[test]
    fn full_surpass_relation_fails_axiom_v() {
        // supertropical n = 1 with the full relation: two distinct
        // tangibles become comparable, violating equality on tangibles
        let base = GroundSystem::supertropical_chain(1);
        let n = base.size();
        let full = vec![vec![true; n]; n];
        let t = RawTables {
            labels: base.labels().to_vec(),
            zero: 0,
            one: 1,
            add: (0..n).map(|a| (0..n).map(|b| base.add_c(a, b)).collect()).collect(),
            mul: (0..n).map(|a| (0..n).map(|b| base.mul_c(a, b)).collect()).collect(),
            neg: (0..n).map(|a| base.neg_c(a)).collect(),
            tangibles: base.tangibles().collect(),
            surpass: Some(full),
        };
        let s = GroundSystem::custom(t).unwrap();
        let r = s.verify_axioms();
        let v = r.check("surpass-v-equality-on-tangibles").unwrap();
        assert!(!v.pass);
        assert_eq!(v.witness.as_deref(), Some(&["0".to_string(), "1".to_string()][..]));
    }

    #[test]
    fn quasi_zero_fixed_by_negation() {
        for s in [
            GroundSystem::boolean(),
            GroundSystem::supertropical_chain(2),
        ] {
            for a in 0..s.size() {
                let q = s.quasi_c(a);
                assert_eq!(s.neg_c(q), q);
            }
        }
    }

    #[test]
    fn null_addition_dominates() {
        // b ⪯ b + c whenever c ⪰ 𝟘
        let s = GroundSystem::supertropical_chain(2);
        for b in 0..s.size() {
            for c in 0..s.size() {
                if s.is_null_c(c) {
                    assert!(s.surpass_c(b, s.add_c(b, c)));
                }
            }
        }
    }

    #[test]
    fn surpass_implies_differences_null() {
        // b1 ⪯ b2 implies b2 (-) b1 ⪰ 𝟘 and b1 (-) b2 ⪰ 𝟘
        for s in [
            GroundSystem::boolean(),
            GroundSystem::supertropical_chain(3),
        ] {
            for a in 0..s.size() {
                for b in 0..s.size() {
                    if s.surpass_c(a, b) {
                        assert!(s.is_null_c(s.sub_c(b, a)));
                        assert!(s.is_null_c(s.sub_c(a, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn maxplus_chain_is_not_a_system() {
        let s = GroundSystem::truncated_max_plus(2);
        let r = s.verify_axioms();
        // idempotent chain order: distinct tangibles are comparable
        assert!(!r.check("surpass-v-equality-on-tangibles").unwrap().pass);
    }
}
