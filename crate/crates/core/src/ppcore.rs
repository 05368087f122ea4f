//! Positive-primitive formulas, pp-pairs and pp-maps as data, with the
//! combinators used to build new formulas from old ones.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::Scalar;
use crate::quivalg::{QuiverAlgebra, RingElement};

/// A sorted variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub sort: usize,
}

impl Var {
    pub fn new(name: impl Into<String>, sort: usize) -> Var {
        Var { name: name.into(), sort }
    }
}

/// One equation `Σ_i r_i · v_i = 0` living in sort `sort`. Variables are
/// indexed free-first, then bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub sort: usize,
    pub coeffs: BTreeMap<usize, RingElement>,
}

impl Equation {
    pub fn new(sort: usize, terms: impl IntoIterator<Item = (usize, RingElement)>) -> Equation {
        let mut coeffs: BTreeMap<usize, RingElement> = BTreeMap::new();
        for (v, r) in terms {
            let merged = match coeffs.remove(&v) {
                Some(old) => old.add(&r).expect("coefficients of one variable share a sort"),
                None => r,
            };
            if !merged.is_zero() {
                coeffs.insert(v, merged);
            }
        }
        Equation { sort, coeffs }
    }

    fn reindex(&self, map: impl Fn(usize) -> usize) -> Equation {
        Equation::new(self.sort, self.coeffs.iter().map(|(&v, r)| (map(v), r.clone())))
    }
}

/// `∃ bound. ⋀ equations`, with free variables listed first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PpFormula {
    algebra: Arc<QuiverAlgebra>,
    free: Vec<Var>,
    bound: Vec<Var>,
    equations: Vec<Equation>,
}

impl PpFormula {
    /// Validates sorts and names; equations with no terms are dropped.
    pub fn new(algebra: Arc<QuiverAlgebra>, free: Vec<Var>, bound: Vec<Var>, equations: Vec<Equation>) -> Result<PpFormula> {
        let n = algebra.vertex_count();
        let mut names = HashSet::new();
        for v in free.iter().chain(&bound) {
            if v.sort >= n {
                return Err(Error::SortMismatch(format!("variable `{}` has an unknown sort", v.name)));
            }
            if !names.insert(v.name.as_str()) {
                return Err(Error::InvalidInput(format!("variable `{}` declared twice", v.name)));
            }
        }
        let vars: Vec<&Var> = free.iter().chain(&bound).collect();
        let mut kept = Vec::new();
        for eq in equations {
            if eq.sort >= n {
                return Err(Error::SortMismatch("equation lives in an unknown sort".into()));
            }
            for (&i, r) in &eq.coeffs {
                let v = vars.get(i).ok_or_else(|| Error::UnknownVariable(format!("#{i}")))?;
                if r.source != v.sort || r.target != eq.sort {
                    return Err(Error::SortMismatch(format!(
                        "coefficient of `{}` goes {} -> {}, expected {} -> {}",
                        v.name,
                        algebra.quiver().vertex_name(r.source),
                        algebra.quiver().vertex_name(r.target),
                        algebra.quiver().vertex_name(v.sort),
                        algebra.quiver().vertex_name(eq.sort)
                    )));
                }
            }
            if !eq.coeffs.is_empty() {
                kept.push(eq);
            }
        }
        Ok(PpFormula { algebra, free, bound, equations: kept })
    }

    /// The tautology `x̄ = x̄` on the given sorts.
    pub fn top(algebra: Arc<QuiverAlgebra>, sorts: &[usize]) -> PpFormula {
        let free = default_vars("x", sorts);
        PpFormula::new(algebra, free, Vec::new(), Vec::new()).expect("valid sorts")
    }

    /// The formula `x̄ = 0` on the given sorts.
    pub fn zero(algebra: Arc<QuiverAlgebra>, sorts: &[usize]) -> PpFormula {
        let f = algebra.field();
        let free = default_vars("x", sorts);
        let eqs = sorts
            .iter()
            .enumerate()
            .map(|(i, &s)| Equation::new(s, [(i, RingElement::lazy(s, f))]))
            .collect();
        PpFormula::new(algebra, free, Vec::new(), eqs).expect("valid sorts")
    }

    /// The graph of the identity: free `x̄ ++ ȳ` with `ȳ = x̄`.
    pub fn identity_map(algebra: Arc<QuiverAlgebra>, sorts: &[usize]) -> PpFormula {
        let f = algebra.field();
        let k = sorts.len();
        let mut free = default_vars("x", sorts);
        free.extend(default_vars("y", sorts));
        let eqs = sorts
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                Equation::new(s, [(k + i, RingElement::lazy(s, f)), (i, RingElement::lazy(s, f).neg())])
            })
            .collect();
        PpFormula::new(algebra, free, Vec::new(), eqs).expect("valid sorts")
    }

    pub fn algebra(&self) -> &Arc<QuiverAlgebra> {
        &self.algebra
    }

    pub fn free(&self) -> &[Var] {
        &self.free
    }

    pub fn bound(&self) -> &[Var] {
        &self.bound
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn free_sorts(&self) -> Vec<usize> {
        self.free.iter().map(|v| v.sort).collect()
    }

    pub fn var_count(&self) -> usize {
        self.free.len() + self.bound.len()
    }

    pub fn var(&self, i: usize) -> &Var {
        if i < self.free.len() {
            &self.free[i]
        } else {
            &self.bound[i - self.free.len()]
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.free.iter().chain(&self.bound).position(|v| v.name == name)
    }

    /// Same formula with its free variables renamed (sorts unchanged).
    pub fn rename_free(&self, names: &[String]) -> Result<PpFormula> {
        if names.len() != self.free.len() {
            return Err(Error::InvalidInput("wrong number of names".into()));
        }
        let mut out = self.clone();
        for (v, n) in out.free.iter_mut().zip(names) {
            v.name = n.clone();
        }
        out.bound = fresh_bound(&out.free, &out.bound);
        PpFormula::new(out.algebra, out.free, out.bound, out.equations)
    }
}

fn default_vars(prefix: &str, sorts: &[usize]) -> Vec<Var> {
    if sorts.len() == 1 {
        return vec![Var::new(prefix, sorts[0])];
    }
    sorts.iter().enumerate().map(|(i, &s)| Var::new(format!("{prefix}{}", i + 1), s)).collect()
}

/// Renames bound variables `_1, _2, ...` avoiding the free names.
fn fresh_bound(free: &[Var], bound: &[Var]) -> Vec<Var> {
    let taken: HashSet<&str> = free.iter().map(|v| v.name.as_str()).collect();
    let mut k = 0;
    bound
        .iter()
        .map(|v| loop {
            k += 1;
            let name = format!("_{k}");
            if !taken.contains(name.as_str()) {
                break Var::new(name, v.sort);
            }
        })
        .collect()
}

fn check_same_algebra(a: &PpFormula, b: &PpFormula) -> Result<()> {
    if Arc::ptr_eq(&a.algebra, &b.algebra) || a.algebra == b.algebra {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// Assembles a formula from parts: `free` are the result's free variables and
/// each part contributes its own variables through an index map into
/// `free ++ new bound`.
struct Builder {
    algebra: Arc<QuiverAlgebra>,
    free: Vec<Var>,
    bound: Vec<Var>,
    equations: Vec<Equation>,
}

/// Where a part's variable goes in the assembled formula.
#[derive(Clone, Copy)]
enum Slot {
    Free(usize),
    Bound(usize),
}

impl Builder {
    fn new(algebra: Arc<QuiverAlgebra>, free: Vec<Var>) -> Builder {
        Builder { algebra, free, bound: Vec::new(), equations: Vec::new() }
    }

    fn new_bound(&mut self, sort: usize) -> Slot {
        self.bound.push(Var::new("_", sort));
        Slot::Bound(self.bound.len() - 1)
    }

    /// Adds `part`, sending its free variable `i` to `free_to[i]`; its bound
    /// variables become fresh bound variables.
    fn add(&mut self, part: &PpFormula, free_to: &[Slot]) {
        let mut slots = free_to.to_vec();
        for v in &part.bound {
            let s = self.new_bound(v.sort);
            slots.push(s);
        }
        for eq in &part.equations {
            let e = Equation::new(eq.sort, eq.coeffs.iter().map(|(&i, r)| (slot_key(slots[i]), r.clone())));
            self.equations.push(e);
        }
    }

    fn equation(&mut self, sort: usize, terms: Vec<(Slot, RingElement)>) {
        let eq = Equation::new(sort, terms.into_iter().map(|(s, r)| (slot_key(s), r)));
        self.equations.push(eq);
    }

    fn finish(self) -> Result<PpFormula> {
        let nf = self.free.len();
        let nb = self.bound.len();
        let resolve = |k: usize| if k < SLOT_BOUND { k } else { nf + (k - SLOT_BOUND) };
        let equations = self.equations.iter().map(|e| e.reindex(resolve)).collect();
        let bound = fresh_bound(&self.free, &self.bound);
        debug_assert_eq!(bound.len(), nb);
        PpFormula::new(self.algebra, self.free, bound, equations)
    }
}

const SLOT_BOUND: usize = usize::MAX / 2;

fn slot_key(s: Slot) -> usize {
    match s {
        Slot::Free(i) => i,
        Slot::Bound(i) => SLOT_BOUND + i,
    }
}

/// Conjunction. `identify` pairs free variables of `a` with free variables of
/// `b`; the result has `a`'s free variables followed by the remaining free
/// variables of `b` (renamed apart if needed).
pub fn conj(a: &PpFormula, b: &PpFormula, identify: &[(usize, usize)]) -> Result<PpFormula> {
    check_same_algebra(a, b)?;
    for &(i, j) in identify {
        let (va, vb) = (
            a.free.get(i).ok_or_else(|| Error::UnknownVariable(format!("#{i}")))?,
            b.free.get(j).ok_or_else(|| Error::UnknownVariable(format!("#{j}")))?,
        );
        if va.sort != vb.sort {
            return Err(Error::SortMismatch(format!("cannot identify `{}` with `{}`", va.name, vb.name)));
        }
    }
    let mut free = a.free.clone();
    let mut b_slots = Vec::new();
    for (j, v) in b.free.iter().enumerate() {
        if let Some(&(i, _)) = identify.iter().find(|&&(_, jj)| jj == j) {
            b_slots.push(Slot::Free(i));
        } else {
            let mut name = v.name.clone();
            while free.iter().any(|w| w.name == name) {
                name.push('\'');
            }
            free.push(Var::new(name, v.sort));
            b_slots.push(Slot::Free(free.len() - 1));
        }
    }
    let a_slots: Vec<Slot> = (0..a.free.len()).map(Slot::Free).collect();
    let mut bld = Builder::new(a.algebra.clone(), free);
    bld.add(a, &a_slots);
    bld.add(b, &b_slots);
    bld.finish()
}

/// Existential quantification over the named free variables.
pub fn exists(f: &PpFormula, vars: &[&str]) -> Result<PpFormula> {
    let mut quantified = Vec::new();
    for name in vars {
        match f.free.iter().position(|v| v.name == *name) {
            Some(i) => quantified.push(i),
            None => return Err(Error::UnknownVariable(name.to_string())),
        }
    }
    let keep: Vec<usize> = (0..f.free.len()).filter(|i| !quantified.contains(i)).collect();
    let free: Vec<Var> = keep.iter().map(|&i| f.free[i].clone()).collect();
    let mut slots = vec![Slot::Free(0); f.free.len()];
    for (k, &i) in keep.iter().enumerate() {
        slots[i] = Slot::Free(k);
    }
    let mut bld = Builder::new(f.algebra.clone(), free);
    for &i in &quantified {
        slots[i] = bld.new_bound(f.free[i].sort);
    }
    bld.add(f, &slots);
    bld.finish()
}

/// Elementary dual: a formula over the opposite algebra.
///
/// For `∃ȳ ⋀_j Σ_i r_{j,i} v_i = 0` the dual has the same free sorts, one
/// bound `z_j` per equation, and equations `x_i - Σ_j r_{j,i}^op z_j = 0` for
/// free `i` and `Σ_j r_{j,i}^op z_j = 0` for bound `i`.
pub fn dual(f: &PpFormula) -> PpFormula {
    let op = Arc::new(f.algebra.opposite());
    let field = op.field();
    let n = f.free.len();
    let mut bld = Builder::new(op, f.free.clone());
    let z: Vec<Slot> = f.equations.iter().map(|e| bld.new_bound(e.sort)).collect();
    for i in 0..f.var_count() {
        let sort = f.var(i).sort;
        let mut terms: Vec<(Slot, RingElement)> = Vec::new();
        if i < n {
            terms.push((Slot::Free(i), RingElement::lazy(sort, field)));
        }
        for (j, e) in f.equations.iter().enumerate() {
            if let Some(r) = e.coeffs.get(&i) {
                terms.push((z[j], r.opposite().neg()));
            }
        }
        bld.equation(sort, terms);
    }
    bld.finish().expect("dual is well sorted")
}

/// `ρ_1 ∘ …`: given maps `ρ_k(x̄, ȳ_k)` from a common source tuple of length
/// `n_source`, builds `∃ȳ_1…ȳ_m (⋀ ρ_k(x̄, ȳ_k) ∧ ȳ = Σ c_k ȳ_k)`.
pub fn linear_combination(maps: &[&PpFormula], coeffs: &[Scalar], n_source: usize) -> Result<PpFormula> {
    let first = maps.first().ok_or_else(|| Error::InvalidInput("empty linear combination".into()))?;
    let sorts = first.free_sorts();
    if n_source > sorts.len() {
        return Err(Error::SortMismatch("source tuple longer than the formula".into()));
    }
    for m in maps {
        check_same_algebra(first, m)?;
        if m.free_sorts() != sorts {
            return Err(Error::SortMismatch("maps with different free sorts".into()));
        }
    }
    let alg = first.algebra.clone();
    let field = alg.field();
    let mut bld = Builder::new(alg, first.free.clone());
    let mut copies: Vec<Vec<Slot>> = Vec::new();
    for m in maps {
        let mut slots: Vec<Slot> = (0..n_source).map(Slot::Free).collect();
        let outs: Vec<Slot> = sorts[n_source..].iter().map(|&s| bld.new_bound(s)).collect();
        slots.extend(outs.iter().copied());
        bld.add(m, &slots);
        copies.push(outs);
    }
    for (t, &s) in sorts[n_source..].iter().enumerate() {
        let mut terms = vec![(Slot::Free(n_source + t), RingElement::lazy(s, field))];
        for (k, c) in coeffs.iter().enumerate() {
            terms.push((copies[k][t], RingElement::scalar(s, -c)));
        }
        bld.equation(s, terms);
    }
    bld.finish()
}

/// `δ(x̄, ȳ) = ∃ȳ₁ȳ₂ (ρ₁(x̄,ȳ₁) ∧ ρ₂(x̄,ȳ₂) ∧ ȳ = ȳ₁ − ȳ₂)`.
pub fn difference_map(rho1: &PpFormula, rho2: &PpFormula, n_source: usize) -> Result<PpFormula> {
    let f = rho1.algebra.field();
    linear_combination(&[rho1, rho2], &[f.one(), -&f.one()], n_source)
}

/// Relational composite `∃ȳ (ρ₁(x̄,ȳ) ∧ ρ₂(ȳ,z̄))`, with `n_mid = |ȳ|`.
pub fn compose_maps(rho1: &PpFormula, rho2: &PpFormula, n_mid: usize) -> Result<PpFormula> {
    check_same_algebra(rho1, rho2)?;
    let s1 = rho1.free_sorts();
    let s2 = rho2.free_sorts();
    if n_mid > s1.len() || n_mid > s2.len() || s1[s1.len() - n_mid..] != s2[..n_mid] {
        return Err(Error::SortMismatch("middle sorts of the composite do not match".into()));
    }
    let n_src = s1.len() - n_mid;
    let mut free: Vec<Var> = rho1.free[..n_src].to_vec();
    let mut b_free: Vec<Var> = rho2.free[n_mid..].to_vec();
    for v in &mut b_free {
        while free.iter().any(|w| w.name == v.name) {
            v.name.push('\'');
        }
    }
    free.extend(b_free);
    let mut bld = Builder::new(rho1.algebra.clone(), free);
    let mid: Vec<Slot> = s1[n_src..].iter().map(|&s| bld.new_bound(s)).collect();
    let mut slots1: Vec<Slot> = (0..n_src).map(Slot::Free).collect();
    slots1.extend(mid.iter().copied());
    let mut slots2 = mid;
    slots2.extend((0..s2.len() - n_mid).map(|k| Slot::Free(n_src + k)));
    bld.add(rho1, &slots1);
    bld.add(rho2, &slots2);
    bld.finish()
}

/// An ordered pair `φ/ψ`, certified once `ψ ≤ φ` has been proved.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PpPair {
    top: PpFormula,
    bottom: PpFormula,
    certified: bool,
    relative_to_test_set: bool,
}

impl PpPair {
    /// An uncertified pair; the free sorts must agree.
    pub fn new(top: PpFormula, bottom: PpFormula) -> Result<PpPair> {
        check_same_algebra(&top, &bottom)?;
        if top.free_sorts() != bottom.free_sorts() {
            return Err(Error::SortMismatch("pair formulas have different free sorts".into()));
        }
        Ok(PpPair { top, bottom, certified: false, relative_to_test_set: false })
    }

    pub fn top(&self) -> &PpFormula {
        &self.top
    }

    pub fn bottom(&self) -> &PpFormula {
        &self.bottom
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// Certified only relative to a finite list of test modules.
    pub fn is_relative_to_test_set(&self) -> bool {
        self.relative_to_test_set
    }

    pub fn free_sorts(&self) -> Vec<usize> {
        self.top.free_sorts()
    }

    pub fn algebra(&self) -> &Arc<QuiverAlgebra> {
        self.top.algebra()
    }

    pub(crate) fn mark_certified(&mut self, relative_to_test_set: bool) {
        self.certified = true;
        self.relative_to_test_set = relative_to_test_set;
    }

    pub fn require_certified(&self, name: &str) -> Result<()> {
        if self.certified {
            Ok(())
        } else {
            Err(Error::UncertifiedPair(name.to_string()))
        }
    }
}

/// A candidate morphism of pp-pairs given by a relation `ρ(x̄, ȳ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PpMap {
    pub source: PpPair,
    pub target: PpPair,
    pub rho: PpFormula,
}

impl PpMap {
    pub fn new(source: PpPair, target: PpPair, rho: PpFormula) -> Result<PpMap> {
        let mut sorts = source.free_sorts();
        sorts.extend(target.free_sorts());
        if rho.free_sorts() != sorts {
            return Err(Error::SortMismatch(
                "free sorts of the map must be the source sorts followed by the target sorts".into(),
            ));
        }
        Ok(PpMap { source, target, rho })
    }

    pub fn n_source(&self) -> usize {
        self.source.free_sorts().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::quivalg::Quiver;

    fn a2() -> Arc<QuiverAlgebra> {
        let q = Quiver::new("A2", &["1", "2"], &[("alpha", "1", "2")]).unwrap();
        Arc::new(QuiverAlgebra::free(q, Field::Rationals))
    }

    fn alpha_x_zero(alg: &Arc<QuiverAlgebra>) -> PpFormula {
        let alpha = alg.element(&["alpha"]).unwrap();
        PpFormula::new(alg.clone(), vec![Var::new("x", 0)], vec![], vec![Equation::new(1, [(0, alpha)])]).unwrap()
    }

    #[test]
    fn sort_checks() {
        let alg = a2();
        let alpha = alg.element(&["alpha"]).unwrap();
        let bad = PpFormula::new(alg.clone(), vec![Var::new("x", 1)], vec![], vec![Equation::new(1, [(0, alpha)])]);
        assert!(matches!(bad, Err(Error::SortMismatch(_))));
        let dup = PpFormula::new(alg, vec![Var::new("x", 0), Var::new("x", 1)], vec![], vec![]);
        assert!(dup.is_err());
    }

    #[test]
    fn exists_moves_variables() {
        let alg = a2();
        let f = alpha_x_zero(&alg);
        assert_eq!(exists(&f, &[]).unwrap(), f);
        let g = exists(&f, &["x"]).unwrap();
        assert!(g.free().is_empty());
        assert_eq!(g.bound().len(), 1);
        assert_eq!(exists(&f, &["nope"]), Err(Error::UnknownVariable("nope".into())));
    }

    #[test]
    fn conj_shapes() {
        let alg = a2();
        let f = alpha_x_zero(&alg);
        let c = conj(&f, &f, &[(0, 0)]).unwrap();
        assert_eq!(c.free().len(), 1);
        assert_eq!(c.equations().len(), 2);
        let c = conj(&f, &f, &[]).unwrap();
        assert_eq!(c.free().len(), 2);
        assert_eq!(c.free()[1].name, "x'");
        let top2 = PpFormula::top(alg.clone(), &[1]);
        assert!(matches!(conj(&f, &top2, &[(0, 0)]), Err(Error::SortMismatch(_))));
    }

    #[test]
    fn dual_shape() {
        let alg = a2();
        let d = dual(&alpha_x_zero(&alg));
        assert_eq!(d.algebra().name(), "A2^op");
        assert_eq!(d.free_sorts(), vec![0]);
        assert_eq!(d.bound().len(), 1);
        assert_eq!(d.bound()[0].sort, 1);
        assert_eq!(d.equations().len(), 1);
        let dd = dual(&d);
        assert_eq!(dd.algebra().as_ref(), alg.as_ref());
    }

    #[test]
    fn difference_map_sorts() {
        let alg = a2();
        let id = PpFormula::identity_map(alg.clone(), &[0]);
        let d = difference_map(&id, &id, 1).unwrap();
        assert_eq!(d.free_sorts(), vec![0, 0]);
        assert_eq!(d.bound().len(), 2);
        let other = PpFormula::identity_map(alg, &[1]);
        assert!(difference_map(&id, &other, 1).is_err());
    }

    #[test]
    fn pairs_and_maps_check_sorts() {
        let alg = a2();
        let p = PpPair::new(PpFormula::top(alg.clone(), &[0]), PpFormula::zero(alg.clone(), &[0])).unwrap();
        assert!(!p.is_certified());
        assert!(PpPair::new(PpFormula::top(alg.clone(), &[0]), PpFormula::zero(alg.clone(), &[1])).is_err());
        let id = PpFormula::identity_map(alg.clone(), &[0]);
        assert!(PpMap::new(p.clone(), p.clone(), id).is_ok());
        let wrong = PpFormula::identity_map(alg, &[1]);
        assert!(PpMap::new(p.clone(), p, wrong).is_err());
    }
}
