//! Systemic modules over a ground system: free modules, explicit tables,
//! direct sums, symmetrized pair modules, submodule restrictions, and
//! quotients, together with exhaustive module-axiom verification.

use crate::bits::{BitGrid, Bits};
use crate::system::{GroundSystem, SystemKind};
use crate::{Bounds, Error, Result};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

static NEXT_MODULE_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_module_id() -> u64 {
    NEXT_MODULE_ID.fetch_add(1, Ordering::Relaxed)
}

pub(crate) struct TableRepr {
    pub add: Vec<u32>,
    pub scalar: Vec<u32>,
    pub neg: Vec<u32>,
    pub surpass: BitGrid,
    pub tangible: Bits,
    pub zero: usize,
    pub labels: Vec<String>,
}

pub(crate) enum Repr {
    /// Free module of the given rank; elements are mixed-radix vectors
    /// over the ground carrier, all structure componentwise.
    Free { rank: usize },
    /// Explicit finite tables.
    Table(TableRepr),
    /// Direct sum `A ⊕ B` over a common ground, componentwise structure,
    /// tangibles on the axes.
    Sum { a: Arc<Module>, b: Arc<Module> },
    /// `M ⊕ M` as a module over the symmetrization of `M`'s ground:
    /// twist scalar action, switch negation, common-summand surpassing.
    Hat {
        inner: Arc<Module>,
        surpass: BitGrid,
    },
    /// Restriction to an operation-closed subset of the parent.
    Sub {
        parent: Arc<Module>,
        members: Vec<u32>,
        index: Vec<u32>, // parent code -> local code + 1, 0 if absent
    },
    /// Quotient by a congruence partition.
    Quot {
        parent: Arc<Module>,
        class_of: Vec<u32>,
        reps: Vec<u32>,
        surpass: BitGrid,
        tangible: Bits,
        zero: usize,
        labels: Vec<String>,
    },
}

/// A systemic module: a finite carrier with addition, a scalar action of
/// the ground system, a tangible subset, a negation map, and a surpassing
/// relation. Immutable after construction.
pub struct Module {
    id: u64,
    ground: Arc<GroundSystem>,
    size: usize,
    pub(crate) repr: Repr,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.repr {
            Repr::Free { rank } => format!("free rank {rank}"),
            Repr::Table(_) => "table".to_string(),
            Repr::Sum { .. } => "sum".to_string(),
            Repr::Hat { .. } => "hat".to_string(),
            Repr::Sub { .. } => "sub".to_string(),
            Repr::Quot { .. } => "quotient".to_string(),
        };
        write!(f, "Module({kind}, {} elements)", self.size)
    }
}

impl Module {
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn ground(&self) -> &Arc<GroundSystem> {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_free(&self) -> bool {
        matches!(self.repr, Repr::Free { .. })
    }

    pub fn rank(&self) -> Option<usize> {
        match &self.repr {
            Repr::Free { rank } => Some(*rank),
            _ => None,
        }
    }

    fn digits(&self, x: usize, rank: usize) -> Vec<usize> {
        let base = self.ground.size();
        let mut v = Vec::with_capacity(rank);
        let mut x = x;
        for _ in 0..rank {
            v.push(x % base);
            x /= base;
        }
        v
    }

    fn from_digits(&self, d: &[usize]) -> usize {
        let base = self.ground.size();
        let mut x = 0;
        for &c in d.iter().rev() {
            x = x * base + c;
        }
        x
    }

    /// Coordinates of a free-module element in basis order.
    pub fn coords(&self, x: usize) -> Result<Vec<usize>> {
        match &self.repr {
            Repr::Free { rank } => Ok(self.digits(x, *rank)),
            _ => Err(Error::NotFree),
        }
    }

    /// Element of a free module with the given coordinates.
    pub fn from_coords(&self, d: &[usize]) -> Result<usize> {
        match &self.repr {
            Repr::Free { rank } => {
                if d.len() != *rank {
                    return Err(Error::Shape(format!(
                        "expected {rank} coordinates, got {}",
                        d.len()
                    )));
                }
                Ok(self.from_digits(d))
            }
            _ => Err(Error::NotFree),
        }
    }

    /// Basis vector `e_i` of a free module.
    pub fn basis(&self, i: usize) -> Result<usize> {
        match &self.repr {
            Repr::Free { rank } => {
                if i >= *rank {
                    return Err(Error::Shape(format!("basis index {i} out of range")));
                }
                let mut d = vec![self.ground.zero_code(); *rank];
                d[i] = self.ground.one_code();
                Ok(self.from_digits(&d))
            }
            _ => Err(Error::NotFree),
        }
    }

    pub fn zero(&self) -> usize {
        match &self.repr {
            Repr::Free { .. } => 0,
            Repr::Table(t) => t.zero,
            Repr::Sum { a, b } => a.zero() * b.size() + b.zero(),
            Repr::Hat { inner, .. } => inner.zero() * inner.size() + inner.zero(),
            Repr::Sub { parent, index, .. } => (index[parent.zero()] - 1) as usize,
            Repr::Quot { zero, .. } => *zero,
        }
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        debug_assert!(x < self.size && y < self.size);
        match &self.repr {
            Repr::Free { rank } => {
                let (dx, dy) = (self.digits(x, *rank), self.digits(y, *rank));
                let d: Vec<usize> = dx
                    .iter()
                    .zip(&dy)
                    .map(|(&a, &b)| self.ground.add_c(a, b))
                    .collect();
                self.from_digits(&d)
            }
            Repr::Table(t) => t.add[x * self.size + y] as usize,
            Repr::Sum { a, b } => {
                let (xa, xb) = (x / b.size(), x % b.size());
                let (ya, yb) = (y / b.size(), y % b.size());
                a.add(xa, ya) * b.size() + b.add(xb, yb)
            }
            Repr::Hat { inner, .. } => {
                let m = inner.size();
                let (x0, x1) = (x / m, x % m);
                let (y0, y1) = (y / m, y % m);
                inner.add(x0, y0) * m + inner.add(x1, y1)
            }
            Repr::Sub {
                parent,
                members,
                index,
            } => (index[parent.add(members[x] as usize, members[y] as usize)] - 1) as usize,
            Repr::Quot {
                parent,
                class_of,
                reps,
                ..
            } => class_of[parent.add(reps[x] as usize, reps[y] as usize)] as usize,
        }
    }

    pub fn neg(&self, x: usize) -> usize {
        debug_assert!(x < self.size);
        match &self.repr {
            Repr::Free { rank } => {
                let d: Vec<usize> = self
                    .digits(x, *rank)
                    .into_iter()
                    .map(|a| self.ground.neg_c(a))
                    .collect();
                self.from_digits(&d)
            }
            Repr::Table(t) => t.neg[x] as usize,
            Repr::Sum { a, b } => {
                let (xa, xb) = (x / b.size(), x % b.size());
                a.neg(xa) * b.size() + b.neg(xb)
            }
            Repr::Hat { inner, .. } => {
                let m = inner.size();
                (x % m) * m + x / m // switch
            }
            Repr::Sub {
                parent,
                members,
                index,
            } => (index[parent.neg(members[x] as usize)] - 1) as usize,
            Repr::Quot {
                parent,
                class_of,
                reps,
                ..
            } => class_of[parent.neg(reps[x] as usize)] as usize,
        }
    }

    /// Scalar action of ground element `a` (a ground code) on `x`.
    pub fn scalar(&self, a: usize, x: usize) -> usize {
        debug_assert!(a < self.ground.size() && x < self.size);
        match &self.repr {
            Repr::Free { rank } => {
                let d: Vec<usize> = self
                    .digits(x, *rank)
                    .into_iter()
                    .map(|c| self.ground.mul_c(a, c))
                    .collect();
                self.from_digits(&d)
            }
            Repr::Table(t) => t.scalar[a * self.size + x] as usize,
            Repr::Sum { a: ma, b: mb } => {
                let (xa, xb) = (x / mb.size(), x % mb.size());
                ma.scalar(a, xa) * mb.size() + mb.scalar(a, xb)
            }
            Repr::Hat { inner, .. } => {
                // ground is the symmetrization of inner's ground;
                // (a0,a1)·(x0,x1) = (a0 x0 + a1 x1, a0 x1 + a1 x0)
                let base = inner.ground().size();
                let (a0, a1) = (a / base, a % base);
                let m = inner.size();
                let (x0, x1) = (x / m, x % m);
                let p0 = inner.add(inner.scalar(a0, x0), inner.scalar(a1, x1));
                let p1 = inner.add(inner.scalar(a0, x1), inner.scalar(a1, x0));
                p0 * m + p1
            }
            Repr::Sub {
                parent,
                members,
                index,
            } => (index[parent.scalar(a, members[x] as usize)] - 1) as usize,
            Repr::Quot {
                parent,
                class_of,
                reps,
                ..
            } => class_of[parent.scalar(a, reps[x] as usize)] as usize,
        }
    }

    /// `x (-) y`.
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// The quasi-zero `x°`.
    pub fn quasi(&self, x: usize) -> usize {
        self.add(x, self.neg(x))
    }

    pub fn is_tangible(&self, x: usize) -> bool {
        debug_assert!(x < self.size);
        match &self.repr {
            Repr::Free { rank } => {
                // tangibles are the union of 𝒯·e_i: exactly one nonzero
                // coordinate, and that coordinate tangible
                let d = self.digits(x, *rank);
                let z = self.ground.zero_code();
                let nonzero: Vec<usize> = d.iter().copied().filter(|&c| c != z).collect();
                nonzero.len() == 1 && self.ground.is_tangible_c(nonzero[0])
            }
            Repr::Table(t) => t.tangible.get(x),
            Repr::Sum { a, b } => {
                let (xa, xb) = (x / b.size(), x % b.size());
                (a.is_tangible(xa) && xb == b.zero()) || (xa == a.zero() && b.is_tangible(xb))
            }
            Repr::Hat { inner, .. } => {
                let m = inner.size();
                let (x0, x1) = (x / m, x % m);
                (inner.is_tangible(x0) && x1 == inner.zero())
                    || (x0 == inner.zero() && inner.is_tangible(x1))
            }
            Repr::Sub {
                parent, members, ..
            } => parent.is_tangible(members[x] as usize),
            Repr::Quot { tangible, .. } => tangible.get(x),
        }
    }

    /// `x ⪯ y` in the module's surpassing relation.
    pub fn surpass(&self, x: usize, y: usize) -> bool {
        debug_assert!(x < self.size && y < self.size);
        match &self.repr {
            Repr::Free { rank } => {
                let (dx, dy) = (self.digits(x, *rank), self.digits(y, *rank));
                dx.iter()
                    .zip(&dy)
                    .all(|(&a, &b)| self.ground.surpass_c(a, b))
            }
            Repr::Table(t) => t.surpass.get(x, y),
            Repr::Sum { a, b } => {
                let (xa, xb) = (x / b.size(), x % b.size());
                let (ya, yb) = (y / b.size(), y % b.size());
                a.surpass(xa, ya) && b.surpass(xb, yb)
            }
            Repr::Hat { surpass, .. } => surpass.get(x, y),
            Repr::Sub {
                parent, members, ..
            } => parent.surpass(members[x] as usize, members[y] as usize),
            Repr::Quot { surpass, .. } => surpass.get(x, y),
        }
    }

    /// `x ⪰ 𝟘`.
    pub fn is_null(&self, x: usize) -> bool {
        self.surpass(self.zero(), x)
    }

    pub fn null_set(&self) -> Bits {
        let z = self.zero();
        Bits::from_indices(self.size, (0..self.size).filter(|&x| self.surpass(z, x)))
    }

    pub fn quasi_set(&self) -> Bits {
        let mut s = Bits::new(self.size);
        for x in 0..self.size {
            s.set(self.quasi(x));
        }
        s
    }

    pub fn tangible_set(&self) -> Bits {
        Bits::from_indices(self.size, (0..self.size).filter(|&x| self.is_tangible(x)))
    }

    pub fn label(&self, x: usize) -> String {
        match &self.repr {
            Repr::Free { rank } => {
                let d = self.digits(x, *rank);
                let parts: Vec<&str> = d.iter().map(|&c| self.ground.label(c)).collect();
                format!("({})", parts.join(","))
            }
            Repr::Table(t) => t.labels[x].clone(),
            Repr::Sum { a, b } => {
                let (xa, xb) = (x / b.size(), x % b.size());
                format!("({},{})", a.label(xa), b.label(xb))
            }
            Repr::Hat { inner, .. } => {
                let m = inner.size();
                format!("({},{})", inner.label(x / m), inner.label(x % m))
            }
            Repr::Sub {
                parent, members, ..
            } => parent.label(members[x] as usize),
            Repr::Quot { labels, .. } => labels[x].clone(),
        }
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        (0..self.size).find(|&x| self.label(x) == label)
    }

    /// Free module of the given rank, componentwise structure, tangibles
    /// the scalar multiples of the basis vectors.
    pub fn free(ground: &Arc<GroundSystem>, rank: usize, bounds: &Bounds) -> Result<Arc<Module>> {
        if rank == 0 {
            return Err(Error::Invalid("free module rank must be at least 1".into()));
        }
        if ground.zero_code() != 0 {
            return Err(Error::Invalid(
                "free modules require the ground zero at carrier index 0".into(),
            ));
        }
        let mut size: usize = 1;
        for _ in 0..rank {
            size = size
                .checked_mul(ground.size())
                .ok_or_else(|| Error::Bound("free module size overflows".into()))?;
        }
        bounds.check_elements(size, "free module")?;
        Ok(Arc::new(Module {
            id: fresh_module_id(),
            ground: Arc::clone(ground),
            size,
            repr: Repr::Free { rank },
        }))
    }

    /// The one-element module `{𝟘}`.
    pub fn zero_module(ground: &Arc<GroundSystem>) -> Arc<Module> {
        let t = TableRepr {
            add: vec![0],
            scalar: vec![0; ground.size()],
            neg: vec![0],
            surpass: {
                let mut g = BitGrid::new(1, 1);
                g.set(0, 0);
                g
            },
            tangible: Bits::new(1),
            zero: 0,
            labels: vec!["z".to_string()],
        };
        Arc::new(Module {
            id: fresh_module_id(),
            ground: Arc::clone(ground),
            size: 1,
            repr: Repr::Table(t),
        })
    }

    pub(crate) fn from_table(ground: &Arc<GroundSystem>, t: TableRepr) -> Arc<Module> {
        let size = t.labels.len();
        Arc::new(Module {
            id: fresh_module_id(),
            ground: Arc::clone(ground),
            size,
            repr: Repr::Table(t),
        })
    }

    /// Direct sum of two modules over the same ground system. Tangibles
    /// sit on the axes; everything else is componentwise.
    pub fn direct_sum(a: &Arc<Module>, b: &Arc<Module>, bounds: &Bounds) -> Result<Arc<Module>> {
        if a.ground.id() != b.ground.id() {
            return Err(Error::CrossSystem);
        }
        let size = a
            .size
            .checked_mul(b.size)
            .ok_or_else(|| Error::Bound("direct sum size overflows".into()))?;
        bounds.check_elements(size, "direct sum")?;
        Ok(Arc::new(Module {
            id: fresh_module_id(),
            ground: Arc::clone(&a.ground),
            size,
            repr: Repr::Sum {
                a: Arc::clone(a),
                b: Arc::clone(b),
            },
        }))
    }

    /// `M ⊕ M` with componentwise structure over the same ground; the
    /// carrier of pair relations.
    pub fn pair_module(m: &Arc<Module>, bounds: &Bounds) -> Result<Arc<Module>> {
        Module::direct_sum(m, m, bounds)
    }

    /// Pack a pair of codes into a sum or hat module element.
    pub fn pair_code(&self, x0: usize, x1: usize) -> Result<usize> {
        match &self.repr {
            Repr::Sum { b, .. } => Ok(x0 * b.size() + x1),
            Repr::Hat { inner, .. } => Ok(x0 * inner.size() + x1),
            _ => Err(Error::Invalid("not a pair-shaped module".into())),
        }
    }

    /// Unpack a sum or hat module element into its two components.
    pub fn pair_split(&self, x: usize) -> Result<(usize, usize)> {
        match &self.repr {
            Repr::Sum { b, .. } => Ok((x / b.size(), x % b.size())),
            Repr::Hat { inner, .. } => Ok((x / inner.size(), x % inner.size())),
            _ => Err(Error::Invalid("not a pair-shaped module".into())),
        }
    }

    /// The symmetrized lift `M̂ = M ⊕ M` as a module over `sym`, which
    /// must be the symmetrization of `M`'s ground: twist action, switch
    /// negation, and the common-summand surpassing relation.
    pub fn hat(m: &Arc<Module>, sym: &Arc<GroundSystem>, bounds: &Bounds) -> Result<Arc<Module>> {
        match sym.kind() {
            SystemKind::Symmetrized { base, .. } if *base == m.ground.id() => {}
            _ => {
                return Err(Error::Invalid(
                    "hat module requires the symmetrization of the module's ground".into(),
                ))
            }
        }
        let size = m
            .size
            .checked_mul(m.size)
            .ok_or_else(|| Error::Bound("hat module size overflows".into()))?;
        bounds.check_elements(size, "hat module")?;
        bounds.check_pair_bits(size, "hat module surpassing table")?;
        let inner = Arc::clone(m);
        let n = inner.size();
        let mut surpass = BitGrid::new(size, size);
        for x0 in 0..n {
            for x1 in 0..n {
                for c in 0..n {
                    let y0 = inner.add(x0, c);
                    let y1 = inner.add(x1, c);
                    surpass.set(x0 * n + x1, y0 * n + y1);
                }
            }
        }
        Ok(Arc::new(Module {
            id: fresh_module_id(),
            ground: Arc::clone(sym),
            size,
            repr: Repr::Hat { inner, surpass },
        }))
    }

    /// Restrict to an operation-closed subset (checked).
    pub fn submodule(m: &Arc<Module>, members: &Bits) -> Result<Arc<Module>> {
        if members.len() != m.size {
            return Err(Error::Shape("member set has wrong carrier size".into()));
        }
        if !members.get(m.zero()) {
            return Err(Error::Invalid("submodule must contain zero".into()));
        }
        for x in members.iter() {
            for y in members.iter() {
                if !members.get(m.add(x, y)) {
                    return Err(Error::Invalid(format!(
                        "not closed under addition: {} + {}",
                        m.label(x),
                        m.label(y)
                    )));
                }
            }
            if !members.get(m.neg(x)) {
                return Err(Error::Invalid(format!(
                    "not closed under negation: {}",
                    m.label(x)
                )));
            }
            for a in 0..m.ground.size() {
                if !members.get(m.scalar(a, x)) {
                    return Err(Error::Invalid(format!(
                        "not closed under the action: {} * {}",
                        m.ground.label(a),
                        m.label(x)
                    )));
                }
            }
        }
        let mems: Vec<u32> = members.iter().map(|x| x as u32).collect();
        let mut index = vec![0u32; m.size];
        for (i, &p) in mems.iter().enumerate() {
            index[p as usize] = i as u32 + 1;
        }
        Ok(Arc::new(Module {
            id: fresh_module_id(),
            ground: Arc::clone(&m.ground),
            size: mems.len(),
            repr: Repr::Sub {
                parent: Arc::clone(m),
                members: mems,
                index,
            },
        }))
    }

    /// Parent code of a submodule element, identity otherwise.
    pub fn parent_code(&self, x: usize) -> usize {
        match &self.repr {
            Repr::Sub { members, .. } => members[x] as usize,
            _ => x,
        }
    }

    /// Local code of a parent element in a submodule restriction.
    pub fn local_code(&self, parent_code: usize) -> Option<usize> {
        match &self.repr {
            Repr::Sub { index, .. } => {
                let v = index[parent_code];
                if v == 0 {
                    None
                } else {
                    Some((v - 1) as usize)
                }
            }
            _ => Some(parent_code),
        }
    }

    /// Quotient by a congruence given as a class map. The surpassing
    /// relation is the existential-representative rule; tangible classes
    /// are those containing a tangible.
    pub(crate) fn quotient_by_classes(m: &Arc<Module>, class_of: &[u32]) -> Arc<Module> {
        let k = class_of.iter().map(|&c| c as usize).max().unwrap_or(0) + 1;
        let mut reps = vec![u32::MAX; k];
        for x in 0..m.size {
            let c = class_of[x] as usize;
            if reps[c] == u32::MAX {
                reps[c] = x as u32;
            }
        }
        let mut surpass = BitGrid::new(k, k);
        for x in 0..m.size {
            for y in 0..m.size {
                if m.surpass(x, y) {
                    surpass.set(class_of[x] as usize, class_of[y] as usize);
                }
            }
        }
        let mut tangible = Bits::new(k);
        for x in 0..m.size {
            if m.is_tangible(x) {
                tangible.set(class_of[x] as usize);
            }
        }
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
        for x in 0..m.size {
            members[class_of[x] as usize].push(x);
        }
        let labels: Vec<String> = members
            .iter()
            .map(|cl| {
                let parts: Vec<String> = cl.iter().map(|&x| m.label(x)).collect();
                format!("[{}]", parts.join(" "))
            })
            .collect();
        Arc::new(Module {
            id: fresh_module_id(),
            ground: Arc::clone(&m.ground),
            size: k,
            repr: Repr::Quot {
                parent: Arc::clone(m),
                class_of: class_of.to_vec(),
                reps,
                surpass,
                tangible,
                zero: class_of[m.zero()] as usize,
                labels,
            },
        })
    }

    /// Class of a parent element in a quotient module.
    pub fn class_of(&self, parent_code: usize) -> Option<usize> {
        match &self.repr {
            Repr::Quot { class_of, .. } => Some(class_of[parent_code] as usize),
            _ => None,
        }
    }

    /// Members of a quotient class.
    pub fn class_members(&self, class: usize) -> Vec<usize> {
        match &self.repr {
            Repr::Quot { class_of, .. } => (0..class_of.len())
                .filter(|&x| class_of[x] as usize == class)
                .collect(),
            _ => vec![class],
        }
    }

    /// Smallest subset containing `seed` closed under addition, the
    /// ground action, and negation (always contains zero).
    pub fn submodule_closure(&self, seed: &Bits) -> Bits {
        let mut s = seed.clone();
        s.set(self.zero());
        loop {
            let mut grew = false;
            let current: Vec<usize> = s.iter().collect();
            for &x in &current {
                let nx = self.neg(x);
                if !s.get(nx) {
                    s.set(nx);
                    grew = true;
                }
                for a in 0..self.ground.size() {
                    let ax = self.scalar(a, x);
                    if !s.get(ax) {
                        s.set(ax);
                        grew = true;
                    }
                }
                for &y in &current {
                    let xy = self.add(x, y);
                    if !s.get(xy) {
                        s.set(xy);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        s
    }

    /// Smallest ⪯-submodule containing `seed`: the submodule closure that
    /// also absorbs additions of null elements.
    pub fn preceq_submodule_closure(&self, seed: &Bits) -> Bits {
        let null: Vec<usize> = self.null_set().iter().collect();
        let mut s = self.submodule_closure(seed);
        loop {
            let before = s.count();
            let current: Vec<usize> = s.iter().collect();
            for &x in &current {
                for &c in &null {
                    s.set(self.add(x, c));
                }
            }
            s = self.submodule_closure(&s);
            if s.count() == before {
                break;
            }
        }
        s
    }
}

/// A distinguished subset of a module closed under the operations, with
/// the ⪯-closure property recorded.
#[derive(Debug, Clone)]
pub struct Submodule {
    pub parent: Arc<Module>,
    pub members: Bits,
    /// `b ∈ N` and `c ⪰ 𝟘` imply `b + c ∈ N`.
    pub preceq_closed: bool,
}

impl Submodule {
    pub fn new(parent: &Arc<Module>, members: Bits) -> Result<Submodule> {
        let closed = parent.submodule_closure(&members);
        if closed != members {
            return Err(Error::Invalid(
                "subset is not closed under the module operations".into(),
            ));
        }
        let null: Vec<usize> = parent.null_set().iter().collect();
        let mut preceq_closed = true;
        'outer: for x in members.iter() {
            for &c in &null {
                if !members.get(parent.add(x, c)) {
                    preceq_closed = false;
                    break 'outer;
                }
            }
        }
        Ok(Submodule {
            parent: Arc::clone(parent),
            members,
            preceq_closed,
        })
    }

    pub fn as_module(&self) -> Result<Arc<Module>> {
        Module::submodule(&self.parent, &self.members)
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|x| self.parent.label(x)).collect()
    }
}

/// The annihilator `Ann_M S = { b : s·b ∈ M_Null for all s ∈ S }`, a
/// ⪯-submodule.
pub fn annihilator(m: &Arc<Module>, scalars: &[usize]) -> Result<Submodule> {
    let mut members = Bits::new(m.size());
    for b in 0..m.size() {
        if scalars.iter().all(|&s| m.is_null(m.scalar(s, b))) {
            members.set(b);
        }
    }
    Submodule::new(m, members)
}

/// `(b°)° = b°` for every element.
pub fn is_circ_idempotent(m: &Module) -> bool {
    (0..m.size()).all(|x| {
        let q = m.quasi(x);
        m.quasi(q) == q
    })
}

/// The largest ∘-idempotent submodule `{ b : (b°)° = b° }`.
pub fn circ_idempotent_core(m: &Arc<Module>) -> Result<Submodule> {
    let mut members = Bits::new(m.size());
    for x in 0..m.size() {
        let q = m.quasi(x);
        if m.quasi(q) == q {
            members.set(x);
        }
    }
    Submodule::new(m, members)
}

/// Signed decomposition of a module whose ground has one: positive and
/// negative parts with the per-element representation `b = b₀ (-) b₁`.
#[derive(Debug, Clone)]
pub struct ModuleSignedDecomposition {
    pub positive: Bits,
    pub negative: Bits,
    /// For each element, its canonical `(b₀, b₁)` with both parts
    /// positive.
    pub parts: Vec<(u32, u32)>,
    /// Whether every element has exactly one such representation.
    pub unique: bool,
    pub unique_witness: Option<String>,
    /// `M⁺ + M⁻ = M`.
    pub covers: bool,
}

/// Decompose a module over a symmetrized ground (hat modules and free
/// modules over a symmetrization) into positive and negative parts.
pub fn signed_module_decompose(m: &Arc<Module>) -> Result<ModuleSignedDecomposition> {
    let base_size = match m.ground().kind() {
        SystemKind::Symmetrized { base_size, .. } => *base_size,
        _ => return Err(Error::NoSignedDecomposition),
    };
    let n = m.size();
    // the positive part: hat modules use the first axis, free modules the
    // vectors with all coordinates on the ground's first axis
    let mut positive = Bits::new(n);
    match &m.repr {
        Repr::Hat { inner, .. } => {
            let k = inner.size();
            for x0 in 0..k {
                positive.set(x0 * k + inner.zero());
            }
        }
        Repr::Free { rank } => {
            let g = m.ground();
            let pos_set = Bits::from_indices(
                g.size(),
                (0..g.size()).filter(|&c| c % base_size == 0), // second pair component is 𝟘
            );
            for x in 0..n {
                let d = m.digits(x, *rank);
                if d.iter().all(|&c| pos_set.get(c)) {
                    positive.set(x);
                }
            }
        }
        _ => {
            return Err(Error::Invalid(
                "signed decomposition supported for hat and free modules".into(),
            ))
        }
    }
    let mut negative = Bits::new(n);
    for p in positive.iter() {
        negative.set(m.neg(p));
    }
    let mut reps: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    let pos: Vec<usize> = positive.iter().collect();
    for &p0 in &pos {
        for &p1 in &pos {
            reps[m.sub(p0, p1)].push((p0 as u32, p1 as u32));
        }
    }
    let covers = reps.iter().all(|r| !r.is_empty());
    let mut unique = true;
    let mut unique_witness = None;
    for (x, r) in reps.iter().enumerate() {
        if r.len() != 1 {
            unique = false;
            unique_witness = Some(format!("{} has {} representations", m.label(x), r.len()));
            break;
        }
    }
    let parts: Vec<(u32, u32)> = reps
        .iter()
        .map(|r| r.first().copied().unwrap_or((u32::MAX, u32::MAX)))
        .collect();
    Ok(ModuleSignedDecomposition {
        positive,
        negative,
        parts,
        unique,
        unique_witness,
        covers,
    })
}

pub use crate::system::Check;

/// Result of exhaustive module verification: the module-with-negation and
/// systemic axioms (required), plus recorded flags that legitimately fail
/// on quotients and restrictions.
#[derive(Debug, Clone)]
pub struct ModuleReport {
    pub required: Vec<Check>,
    pub flags: Vec<Check>,
}

impl ModuleReport {
    pub fn all_required_pass(&self) -> bool {
        self.required.iter().all(|c| c.pass)
    }

    pub fn flag(&self, name: &str) -> Option<&Check> {
        self.flags.iter().find(|c| c.name == name)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.required
            .iter()
            .chain(self.flags.iter())
            .find(|c| c.name == name)
    }

    pub fn failed(&self) -> Vec<&Check> {
        self.required.iter().filter(|c| !c.pass).collect()
    }
}

/// Exhaustively verify the module axioms, the negation-map axioms, the
/// surpassing-relation axioms, and the systemic compatibility condition.
pub fn verify_module(m: &Module, bounds: &Bounds) -> Result<ModuleReport> {
    bounds.check_elements(m.size(), "module verification")?;
    let n = m.size();
    let g = m.ground();
    let gn = g.size();
    let z = m.zero();
    let mut required = Vec::new();
    let mut flags = Vec::new();

    let el = |x: usize| m.label(x);
    let sc = |a: usize| g.label(a).to_string();

    let mut req = |name: &str, witness: Option<Vec<String>>| {
        required.push(Check {
            name: name.to_string(),
            pass: witness.is_none(),
            witness,
        });
    };

    // additive commutative monoid
    let mut w = None;
    'a: for x in 0..n {
        for y in 0..n {
            if m.add(x, y) != m.add(y, x) {
                w = Some(vec![el(x), el(y)]);
                break 'a;
            }
        }
    }
    req("add-commutative", w);
    let mut w = None;
    'b: for x in 0..n {
        for y in 0..n {
            for v in 0..n {
                if m.add(m.add(x, y), v) != m.add(x, m.add(y, v)) {
                    w = Some(vec![el(x), el(y), el(v)]);
                    break 'b;
                }
            }
        }
    }
    req("add-associative", w);
    let w = (0..n).find(|&x| m.add(z, x) != x).map(|x| vec![el(x)]);
    req("zero-additive-identity", w);

    // scalar action
    let mut w = None;
    'c: for a in 0..gn {
        for b in 0..gn {
            for x in 0..n {
                if m.scalar(g.mul_c(a, b), x) != m.scalar(a, m.scalar(b, x)) {
                    w = Some(vec![sc(a), sc(b), el(x)]);
                    break 'c;
                }
            }
        }
    }
    req("scalar-associative", w);
    let mut w = None;
    for a in 0..gn {
        if m.scalar(a, z) != z {
            w = Some(vec![sc(a)]);
            break;
        }
    }
    if w.is_none() {
        for x in 0..n {
            if m.scalar(g.zero_code(), x) != z {
                w = Some(vec![el(x)]);
                break;
            }
        }
    }
    req("scalar-zero-laws", w);
    let mut w = None;
    'd: for a in 0..gn {
        for x in 0..n {
            for y in 0..n {
                if m.scalar(a, m.add(x, y)) != m.add(m.scalar(a, x), m.scalar(a, y)) {
                    w = Some(vec![sc(a), el(x), el(y)]);
                    break 'd;
                }
            }
        }
    }
    req("scalar-distributes-over-module-sum", w);
    let mut w = None;
    'e: for a in 0..gn {
        for b in 0..gn {
            for x in 0..n {
                if m.scalar(g.add_c(a, b), x) != m.add(m.scalar(a, x), m.scalar(b, x)) {
                    w = Some(vec![sc(a), sc(b), el(x)]);
                    break 'e;
                }
            }
        }
    }
    req("scalar-distributes-over-ground-sum", w);
    let w = (0..n)
        .find(|&x| m.scalar(g.one_code(), x) != x)
        .map(|x| vec![el(x)]);
    req("one-acts-as-identity", w);

    // negation map
    let w = (0..n).find(|&x| m.neg(m.neg(x)) != x).map(|x| vec![el(x)]);
    req("neg-order-2", w);
    let mut w = None;
    'f: for x in 0..n {
        for y in 0..n {
            if m.neg(m.add(x, y)) != m.add(m.neg(x), m.neg(y)) {
                w = Some(vec![el(x), el(y)]);
                break 'f;
            }
        }
    }
    req("neg-additive", w);
    let w = if m.neg(z) != z { Some(vec![el(z)]) } else { None };
    req("neg-zero", w);
    let mut w = None;
    'g: for a in 0..gn {
        for x in 0..n {
            let v = m.scalar(a, x);
            if m.scalar(g.neg_c(a), x) != m.neg(v) || m.scalar(a, m.neg(x)) != m.neg(v) {
                w = Some(vec![sc(a), el(x)]);
                break 'g;
            }
        }
    }
    req("neg-respects-action", w);

    // surpassing relation
    let w = (0..n).find(|&x| !m.surpass(x, x)).map(|x| vec![el(x)]);
    req("surpass-reflexive", w);
    let mut w = None;
    'h: for x in 0..n {
        for y in 0..n {
            if !m.surpass(x, y) {
                continue;
            }
            for v in 0..n {
                if m.surpass(y, v) && !m.surpass(x, v) {
                    w = Some(vec![el(x), el(y), el(v)]);
                    break 'h;
                }
            }
        }
    }
    req("surpass-transitive", w);
    let w = (0..n)
        .find(|&x| !m.surpass(z, m.quasi(x)))
        .map(|x| vec![el(x)]);
    req("surpass-zero-below-quasi", w);
    let mut w = None;
    'i: for x in 0..n {
        for y in 0..n {
            if m.surpass(x, y) && !m.surpass(m.neg(x), m.neg(y)) {
                w = Some(vec![el(x), el(y)]);
                break 'i;
            }
        }
    }
    req("surpass-neg-monotone", w);
    // one-sided addition monotonicity; with transitivity this is
    // equivalent to the two-sided axiom
    let mut w = None;
    'j: for x in 0..n {
        for y in 0..n {
            if !m.surpass(x, y) {
                continue;
            }
            for c in 0..n {
                if !m.surpass(m.add(x, c), m.add(y, c)) {
                    w = Some(vec![el(x), el(y), el(c)]);
                    break 'j;
                }
            }
        }
    }
    req("surpass-add-monotone", w);
    // systemic compatibility: a ⪯ a' and x ⪯ x' imply ax ⪯ a'x'
    let mut w = None;
    'k: for a in 0..gn {
        for ap in 0..gn {
            if !g.surpass_c(a, ap) {
                continue;
            }
            for x in 0..n {
                for xp in 0..n {
                    if m.surpass(x, xp) && !m.surpass(m.scalar(a, x), m.scalar(ap, xp)) {
                        w = Some(vec![sc(a), sc(ap), el(x), el(xp)]);
                        break 'k;
                    }
                }
            }
        }
    }
    req("systemic-action-monotone", w);

    // recorded flags: may fail on quotients, restrictions, and truncated
    // carriers
    let mut fl = |name: &str, witness: Option<Vec<String>>| {
        flags.push(Check {
            name: name.to_string(),
            pass: witness.is_none(),
            witness,
        });
    };

    // tangible closure under the tangible ground action; truncated
    // chains overflow tangible products into the ghost layer, so this is
    // recorded rather than required
    let mut w = None;
    'l: for a in g.tangibles() {
        for x in 0..n {
            if m.is_tangible(x) && !m.is_tangible(m.scalar(a, x)) {
                w = Some(vec![sc(a), el(x)]);
                break 'l;
            }
        }
    }
    fl("tangible-action-closure", w);

    // uniquely negated: each tangible has exactly one tangible partner
    // with 𝟘 ⪯ x + t, namely (-)x
    let mut w = None;
    for x in (0..n).filter(|&x| m.is_tangible(x)) {
        let partners: Vec<usize> = (0..n)
            .filter(|&t| m.is_tangible(t) && m.is_null(m.add(x, t)))
            .collect();
        if partners.len() != 1 || partners[0] != m.neg(x) {
            w = Some(vec![el(x)]);
            break;
        }
    }
    fl("uniquely-negated", w);

    // tangibles span the module additively
    let mut spanned = Bits::new(n);
    spanned.set(z);
    for x in 0..n {
        if m.is_tangible(x) {
            spanned.set(x);
        }
    }
    loop {
        let mut grew = false;
        let cur: Vec<usize> = spanned.iter().collect();
        for &x in &cur {
            for &y in &cur {
                let s = m.add(x, y);
                if !spanned.get(s) {
                    spanned.set(s);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let w = (0..n).find(|&x| !spanned.get(x)).map(|x| vec![el(x)]);
    fl("tangibles-span", w);

    let w = (0..n)
        .find(|&x| m.is_tangible(x) && m.is_null(x))
        .map(|x| vec![el(x)]);
    fl("tangibles-disjoint-from-null", w);

    Ok(ModuleReport { required, flags })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Arc<GroundSystem> {
        GroundSystem::boolean()
    }

    fn st(n: usize) -> Arc<GroundSystem> {
        GroundSystem::supertropical_chain(n)
    }

    #[test]
    fn boolean_free_rank2() {
        let m = Module::free(&b(), 2, &Bounds::default()).unwrap();
        assert_eq!(m.size(), 4);
        let tang: Vec<String> = m.tangible_set().iter().map(|x| m.label(x)).collect();
        assert_eq!(tang, vec!["(1,0)", "(0,1)"]);
        let report = verify_module(&m, &Bounds::default()).unwrap();
        assert!(report.all_required_pass(), "{:?}", report.failed());
        // over the Boolean carrier the null set is everything, so a
        // rank-2 module has two tangible partners for each tangible
        assert!(!report.flag("uniquely-negated").unwrap().pass);
        assert!(report.flag("tangibles-span").unwrap().pass);
    }

    #[test]
    fn rank_one_matches_system() {
        let g = st(1);
        let m = Module::free(&g, 1, &Bounds::default()).unwrap();
        assert_eq!(m.size(), g.size());
        for a in 0..g.size() {
            for bb in 0..g.size() {
                assert_eq!(m.add(a, bb), g.add_c(a, bb));
                assert_eq!(m.scalar(a, bb), g.mul_c(a, bb));
                assert_eq!(m.surpass(a, bb), g.surpass_c(a, bb));
            }
        }
        let report = verify_module(&m, &Bounds::default()).unwrap();
        assert!(report.all_required_pass(), "{:?}", report.failed());
        assert!(report.flag("uniquely-negated").unwrap().pass);
    }

    #[test]
    fn free_module_reports_pass() {
        for g in [b(), st(0), st(2)] {
            for rank in 1..=2 {
                let m = Module::free(&g, rank, &Bounds::default()).unwrap();
                let report = verify_module(&m, &Bounds::default()).unwrap();
                assert!(
                    report.all_required_pass(),
                    "ground {:?} rank {rank}: {:?}",
                    g.kind(),
                    report.failed()
                );
            }
        }
    }

    #[test]
    fn annihilator_of_unit_is_null_set() {
        // rank 1 over the three-element supertropical carrier: the unit
        // annihilates exactly zero and the ghost
        let g = st(0);
        let m = Module::free(&g, 1, &Bounds::default()).unwrap();
        let unit = g.one_code();
        let ann = annihilator(&m, &[unit]).unwrap();
        let labels = ann.labels();
        assert_eq!(labels, vec!["(z)", "(0v)"]);
        assert!(ann.preceq_closed);
    }

    #[test]
    fn annihilator_trivial_cases() {
        let g = st(1);
        let m = Module::free(&g, 1, &Bounds::default()).unwrap();
        // empty scalar set: the condition is vacuous
        let all = annihilator(&m, &[]).unwrap();
        assert_eq!(all.members.count(), m.size());
        // zero scalar: everything is annihilated
        let zero = annihilator(&m, &[g.zero_code()]).unwrap();
        assert_eq!(zero.members.count(), m.size());
    }

    #[test]
    fn circ_idempotence() {
        for n in 0..=3 {
            let g = st(n);
            let m = Module::free(&g, 1, &Bounds::default()).unwrap();
            assert!(is_circ_idempotent(&m));
            let core = circ_idempotent_core(&m).unwrap();
            assert_eq!(core.members.count(), m.size());
        }
    }

    #[test]
    fn preceq_closure_contains_null() {
        let g = st(1);
        let m = Module::free(&g, 1, &Bounds::default()).unwrap();
        let seed = Bits::new(m.size());
        let s = m.preceq_submodule_closure(&seed);
        // a ⪯-submodule always contains the null set
        assert!(m.null_set().is_subset(&s));
    }

    #[test]
    fn direct_sum_shape() {
        let g = st(0);
        let m = Module::free(&g, 1, &Bounds::default()).unwrap();
        let s = Module::direct_sum(&m, &m, &Bounds::default()).unwrap();
        assert_eq!(s.size(), 9);
        let report = verify_module(&s, &Bounds::default()).unwrap();
        assert!(report.all_required_pass(), "{:?}", report.failed());
        // tangibles on the axes only
        assert_eq!(s.tangible_set().count(), 2);
    }

    #[test]
    fn height2_ground_gives_quasi_absorption() {
        // over a bipotent height-2 ground, b° + b = b° componentwise
        for g in [st(0), st(2)] {
            assert!(g.is_bipotent() && g.has_height_2());
            let m = Module::free(&g, 2, &Bounds::default()).unwrap();
            for x in 0..m.size() {
                let q = m.quasi(x);
                assert_eq!(m.add(q, x), q);
            }
        }
    }
}
