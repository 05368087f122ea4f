//! Quivers with relations and the K-linear path categories they present.
//!
//! Paths are stored in application order: `arrows[0]` is applied first.
//! Composition is written right to left, so the path "apply `a`, then `b`"
//! is the product `b·a`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(arrow, source, target)` triples.
    pub fn new(name: &str, vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver> {
        let vertices: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate vertex `{v}`")));
            }
        }
        let mut out = Vec::new();
        let mut arrow_names = HashMap::new();
        for &(a, s, t) in arrows {
            if arrow_names.insert(a.to_string(), ()).is_some() {
                return Err(Error::InvalidInput(format!("duplicate arrow `{a}`")));
            }
            let lookup = |v: &str| {
                seen.get(v)
                    .copied()
                    .ok_or_else(|| Error::InvalidInput(format!("arrow `{a}` uses undeclared vertex `{v}`")))
            };
            out.push(Arrow { name: a.to_string(), source: lookup(s)?, target: lookup(t)? });
        }
        Ok(Quiver { name: name.to_string(), vertices, arrows: out })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            name: format!("{}^op", self.name),
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen == n
    }

    /// All paths starting at `s` of length at most `max_len`, shortest first.
    pub fn paths_from(&self, s: usize, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::lazy(s)];
        let mut frontier = vec![Path::lazy(s)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(i);
                        next.push(Path { source: s, target: a.target, arrows });
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

/// A path in a quiver, arrows in application order. The empty path at a
/// vertex is its lazy path (identity).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn lazy(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Path {
        let ar = q.arrow(a);
        Path { source: ar.source, target: ar.target, arrows: vec![a] }
    }

    /// Path from an application-ordered arrow list; checks composability.
    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Result<Path> {
        let Some((&first, rest)) = arrows.split_first() else {
            return Err(Error::InvalidInput("use Path::lazy for empty paths".into()));
        };
        let mut target = q.arrow(first).target;
        for &a in rest {
            let ar = q.arrow(a);
            if ar.source != target {
                return Err(Error::SortMismatch(format!(
                    "arrow `{}` starts at `{}` but the path so far ends at `{}`",
                    ar.name,
                    q.vertex_name(ar.source),
                    q.vertex_name(target)
                )));
            }
            target = ar.target;
        }
        Ok(Path { source: q.arrow(first).source, target, arrows: arrows.to_vec() })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Path) -> Option<Path> {
        if first.target != self.source {
            return None;
        }
        let mut arrows = first.arrows.clone();
        arrows.extend_from_slice(&self.arrows);
        Some(Path { source: first.source, target: self.target, arrows })
    }

    /// Position of the first occurrence of `sub` as a contiguous subpath.
    fn find(&self, sub: &Path) -> Option<usize> {
        if sub.arrows.is_empty() {
            return (sub.source == self.source).then_some(0);
        }
        self.arrows.windows(sub.arrows.len()).position(|w| w == sub.arrows.as_slice())
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { source: self.target, target: self.source, arrows }
    }

    /// Composition notation, e.g. `b.a` for "apply `a`, then `b`".
    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("id({})", q.vertex_name(self.source));
        }
        self.arrows
            .iter()
            .rev()
            .map(|&a| q.arrow(a).name.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Degree-lexicographic order: longer paths are larger.
fn deglex(a: &Path, b: &Path) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.arrows.cmp(&b.arrows))
}

/// A finite K-linear combination of parallel paths `source -> target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub source: usize,
    pub target: usize,
    terms: BTreeMap<Path, Scalar>,
}

impl RingElement {
    pub fn zero(source: usize, target: usize) -> RingElement {
        RingElement { source, target, terms: BTreeMap::new() }
    }

    pub fn from_path(p: Path, c: Scalar) -> RingElement {
        let mut e = RingElement::zero(p.source, p.target);
        e.add_term(p, c);
        e
    }

    pub fn lazy(v: usize, field: Field) -> RingElement {
        RingElement::from_path(Path::lazy(v), field.one())
    }

    pub fn scalar(v: usize, c: Scalar) -> RingElement {
        RingElement::from_path(Path::lazy(v), c)
    }

    pub fn arrow(q: &Quiver, a: usize, field: Field) -> RingElement {
        RingElement::from_path(Path::arrow(q, a), field.one())
    }

    /// Adds `c·p`, dropping the term if it cancels.
    pub fn add_term(&mut self, p: Path, c: Scalar) {
        assert!(
            p.source == self.source && p.target == self.target,
            "term sort does not match ring element"
        );
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&p) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(p, s);
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Path) -> Option<&Scalar> {
        self.terms.get(p)
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        if (self.source, self.target) != (other.source, other.target) {
            return Err(Error::SortMismatch("adding ring elements of different sorts".into()));
        }
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> RingElement {
        let mut out = RingElement::zero(self.source, self.target);
        for (p, x) in self.terms() {
            out.add_term(p.clone(), x * c);
        }
        out
    }

    pub fn neg(&self) -> RingElement {
        let mut out = RingElement::zero(self.source, self.target);
        for (p, x) in self.terms() {
            out.add_term(p.clone(), -x);
        }
        out
    }

    /// Product `self · first` (apply `first`, then `self`), extended bilinearly.
    /// Relations are not reduced here.
    pub fn compose(&self, first: &RingElement) -> Result<RingElement> {
        if self.source != first.target {
            return Err(Error::SortMismatch(format!(
                "cannot compose: left factor starts at vertex {} but right factor ends at vertex {}",
                self.source, first.target
            )));
        }
        let mut out = RingElement::zero(first.source, self.target);
        for (p, a) in self.terms() {
            for (q, b) in first.terms() {
                let pq = p.after(q).expect("sorts already checked");
                out.add_term(pq, a * b);
            }
        }
        Ok(out)
    }

    /// The same element read in the opposite quiver.
    pub fn opposite(&self) -> RingElement {
        let mut out = RingElement::zero(self.target, self.source);
        for (p, c) in self.terms() {
            out.add_term(p.reversed(), c.clone());
        }
        out
    }

    /// Largest path in degree-lexicographic order.
    pub fn leading(&self) -> Option<(&Path, &Scalar)> {
        self.terms.iter().max_by(|a, b| deglex(a.0, b.0))
    }
}

/// Rewriting rule `lead -> tail` obtained by orienting a relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Rule {
    lead: Path,
    tail: RingElement,
}

/// A quiver with relations over an exact field: a presentation of a small
/// K-linear category.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuiverAlgebra {
    name: String,
    quiver: Quiver,
    field: Field,
    relations: Vec<RingElement>,
    nilpotency: Option<usize>,
    admissible: bool,
    rules: Vec<Rule>,
}

impl QuiverAlgebra {
    /// Builds the algebra and decides admissibility.
    ///
    /// Relations with a term of length < 2 are accepted but force the
    /// algebra to be non-admissible. A cyclic quiver is admissible only with
    /// a declared nilpotency bound `N` such that every path of length `N`
    /// reduces to zero.
    pub fn new(
        name: &str,
        quiver: Quiver,
        field: Field,
        relations: Vec<RingElement>,
        nilpotency: Option<usize>,
    ) -> Result<QuiverAlgebra> {
        let mut rules = Vec::new();
        let mut short_terms = false;
        for (i, r) in relations.iter().enumerate() {
            let Some((lead, c)) = r.leading() else {
                return Err(Error::InvalidInput(format!("relation {} is zero", i + 1)));
            };
            for (p, x) in r.terms() {
                if !field.contains(x) {
                    return Err(Error::InvalidInput(format!("relation {} has a coefficient outside {field}", i + 1)));
                }
                if p.len() < 2 {
                    short_terms = true;
                }
            }
            let inv = c.inv();
            let mut tail = RingElement::zero(r.source, r.target);
            for (p, x) in r.terms() {
                if p != lead {
                    tail.add_term(p.clone(), -&(x * &inv));
                }
            }
            rules.push(Rule { lead: lead.clone(), tail });
        }
        // Lazy or length-one terms only occur in non-admissible presentations,
        // which are never rewritten to normal form, so the shape check is skipped.
        for (i, a) in rules.iter().enumerate().filter(|_| !short_terms) {
            for (j, b) in rules.iter().enumerate() {
                if i != j && b.tail.terms().any(|(p, _)| p.find(&a.lead).is_some()) {
                    return Err(Error::InvalidInput(format!(
                        "unsupported relation shape: leading path of relation {} occurs in relation {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let mut alg = QuiverAlgebra {
            name: name.to_string(),
            quiver,
            field,
            relations,
            nilpotency,
            admissible: false,
            rules,
        };
        alg.admissible = if short_terms {
            false
        } else if alg.quiver.is_acyclic() {
            true
        } else if let Some(n) = nilpotency {
            let all_vanish = (0..alg.quiver.vertex_count()).all(|s| {
                alg.quiver
                    .paths_from(s, n)
                    .into_iter()
                    .filter(|p| p.len() == n)
                    .all(|p| alg.reduce(&RingElement::from_path(p, field.one())).is_zero())
            });
            if !all_vanish {
                return Err(Error::InvalidInput(format!(
                    "declared nilpotency bound {n} does not kill all paths of length {n}"
                )));
            }
            true
        } else {
            false
        };
        Ok(alg)
    }

    /// Path algebra with no relations.
    pub fn free(quiver: Quiver, field: Field) -> QuiverAlgebra {
        let name = quiver.name().to_string();
        QuiverAlgebra::new(&name, quiver, field, Vec::new(), None).expect("relation-free algebra")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn relations(&self) -> &[RingElement] {
        &self.relations
    }

    pub fn nilpotency(&self) -> Option<usize> {
        self.nilpotency
    }

    pub fn is_admissible(&self) -> bool {
        self.admissible
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn require_admissible(&self, what: &str) -> Result<()> {
        if self.admissible {
            Ok(())
        } else {
            Err(Error::NotAdmissible(format!("{what} needs finite hom spaces; `{}` is not admissible", self.name)))
        }
    }

    /// Normal form modulo the relations (leftmost-longest rewriting).
    pub fn reduce(&self, e: &RingElement) -> RingElement {
        let mut cur = e.clone();
        loop {
            let hit = cur.terms().find_map(|(p, c)| {
                self.rules
                    .iter()
                    .find_map(|r| p.find(&r.lead).map(|pos| (p.clone(), c.clone(), r, pos)))
            });
            let Some((p, c, rule, pos)) = hit else {
                return cur;
            };
            cur.terms.remove(&p);
            let prefix = &p.arrows[..pos];
            let suffix = &p.arrows[pos + rule.lead.len()..];
            for (t, x) in rule.tail.terms() {
                let mut arrows = prefix.to_vec();
                arrows.extend_from_slice(&t.arrows);
                arrows.extend_from_slice(suffix);
                cur.add_term(Path { source: p.source, target: p.target, arrows }, &c * x);
            }
        }
    }

    fn is_irreducible(&self, p: &Path) -> bool {
        self.rules.iter().all(|r| p.find(&r.lead).is_none())
    }

    fn max_path_len(&self) -> usize {
        if self.quiver.is_acyclic() {
            self.quiver.vertex_count().saturating_sub(1)
        } else {
            self.nilpotency.unwrap_or(1).saturating_sub(1)
        }
    }

    /// K-basis of `Hom(s, t)`: the irreducible paths `s -> t`.
    pub fn hom_basis(&self, s: usize, t: usize) -> Result<Vec<Path>> {
        self.require_admissible("hom_basis")?;
        let mut out: Vec<Path> = self
            .quiver
            .paths_from(s, self.max_path_len())
            .into_iter()
            .filter(|p| p.target == t && self.is_irreducible(p))
            .collect();
        out.sort_by(deglex);
        Ok(out)
    }

    /// Every irreducible path, i.e. a basis of the whole path algebra.
    pub fn basis_paths(&self) -> Result<Vec<Path>> {
        let mut out = Vec::new();
        for s in 0..self.vertex_count() {
            for t in 0..self.vertex_count() {
                out.extend(self.hom_basis(s, t)?);
            }
        }
        Ok(out)
    }

    /// The opposite algebra: arrows and paths reversed.
    pub fn opposite(&self) -> QuiverAlgebra {
        let name = if let Some(base) = self.name.strip_suffix("^op") {
            base.to_string()
        } else {
            format!("{}^op", self.name)
        };
        let mut quiver = self.quiver.opposite();
        quiver.name = if let Some(base) = self.quiver.name.strip_suffix("^op") {
            base.to_string()
        } else {
            quiver.name
        };
        let relations = self.relations.iter().map(RingElement::opposite).collect();
        QuiverAlgebra::new(&name, quiver, self.field, relations, self.nilpotency)
            .expect("opposite of a valid algebra is valid")
    }

    /// Parses a path written in composition order, e.g. `b.a`.
    pub fn path_from_names(&self, names: &[&str]) -> Result<Path> {
        let mut idx = Vec::new();
        for n in names.iter().rev() {
            idx.push(
                self.quiver
                    .arrow_index(n)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown arrow `{n}`")))?,
            );
        }
        Path::from_arrows(&self.quiver, &idx)
    }

    /// Convenience: the element `1·p` for a path named in composition order.
    pub fn element(&self, names: &[&str]) -> Result<RingElement> {
        Ok(RingElement::from_path(self.path_from_names(names)?, self.field.one()))
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.quiver
            .vertex_index(name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown vertex `{name}`")))
    }

    pub fn display_element(&self, e: &RingElement) -> String {
        ElementDisplay { alg: self, e }.to_string()
    }
}

struct ElementDisplay<'a> {
    alg: &'a QuiverAlgebra,
    e: &'a RingElement,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.e.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{}", p.display(self.alg.quiver()))?;
            } else {
                write!(f, "{}*{}", c, p.display(self.alg.quiver()))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn a3() -> QuiverAlgebra {
        let q = Quiver::new("A3", &["1", "2", "3"], &[("alpha", "1", "2"), ("beta", "2", "3")]).unwrap();
        QuiverAlgebra::free(q, Q)
    }

    fn a2() -> QuiverAlgebra {
        let q = Quiver::new("A2", &["1", "2"], &[("alpha", "1", "2")]).unwrap();
        QuiverAlgebra::free(q, Q)
    }

    #[test]
    fn compose_in_a3() {
        let alg = a3();
        let beta = alg.element(&["beta"]).unwrap();
        let alpha = alg.element(&["alpha"]).unwrap();
        let ba = beta.compose(&alpha).unwrap();
        assert_eq!((ba.source, ba.target), (0, 2));
        assert_eq!(ba, alg.element(&["beta", "alpha"]).unwrap());
        assert_eq!(alg.display_element(&ba), "beta.alpha");
    }

    #[test]
    fn lazy_paths_are_units() {
        let alg = a2();
        let alpha = alg.element(&["alpha"]).unwrap();
        let e1 = RingElement::lazy(0, Q);
        let e2 = RingElement::lazy(1, Q);
        assert_eq!(e2.compose(&alpha).unwrap(), alpha);
        assert_eq!(alpha.compose(&e1).unwrap(), alpha);
        assert!(matches!(alpha.compose(&e2), Err(Error::SortMismatch(_))));
    }

    #[test]
    fn hom_bases() {
        let alg = a3();
        assert_eq!(alg.hom_basis(0, 2).unwrap(), vec![alg.path_from_names(&["beta", "alpha"]).unwrap()]);
        let alg = a2();
        assert!(alg.hom_basis(1, 0).unwrap().is_empty());
        let q = Quiver::new("A1t", &["1", "2"], &[("alpha", "1", "2"), ("beta", "1", "2")]).unwrap();
        let alg = QuiverAlgebra::free(q, Q);
        assert_eq!(alg.hom_basis(0, 1).unwrap().len(), 2);
    }

    #[test]
    fn path_algebra_dimensions() {
        assert_eq!(a2().basis_paths().unwrap().len(), 3);
        assert_eq!(a3().basis_paths().unwrap().len(), 6);
    }

    #[test]
    fn monomial_relation_kills_composite() {
        // 1 <-pi- 2 <-i- 3 with the length-two path killed
        let q = Quiver::new("S", &["1", "2", "3"], &[("pi", "2", "1"), ("i", "3", "2")]).unwrap();
        let free = QuiverAlgebra::free(q.clone(), Q);
        let rel = free.element(&["pi", "i"]).unwrap();
        let alg = QuiverAlgebra::new("S", q, Q, vec![rel.clone()], None).unwrap();
        assert!(alg.is_admissible());
        assert!(alg.reduce(&rel).is_zero());
        assert_eq!(alg.basis_paths().unwrap().len(), 5);
    }

    #[test]
    fn loops_need_a_nilpotency_bound() {
        let q = Quiver::new("KT", &["*"], &[("T", "*", "*")]).unwrap();
        let kt = QuiverAlgebra::free(q.clone(), Q);
        assert!(!kt.is_admissible());
        assert!(matches!(kt.hom_basis(0, 0), Err(Error::NotAdmissible(_))));

        let eps2 = kt.element(&["T", "T"]).unwrap();
        let dual_numbers = QuiverAlgebra::new("Keps", q.clone(), Q, vec![eps2.clone()], Some(2)).unwrap();
        assert!(dual_numbers.is_admissible());
        assert_eq!(dual_numbers.hom_basis(0, 0).unwrap().len(), 2);

        let bad = QuiverAlgebra::new("bad", q, Q, vec![kt.element(&["T", "T", "T"]).unwrap()], Some(2));
        assert!(bad.is_err());
    }

    #[test]
    fn binomial_rewriting() {
        // commutative square 1 -> 2 -> 4, 1 -> 3 -> 4 with d.a = c.b
        let q = Quiver::new(
            "sq",
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "1", "3"), ("c", "3", "4"), ("d", "2", "4")],
        )
        .unwrap();
        let free = QuiverAlgebra::free(q.clone(), Q);
        let rel = free.element(&["d", "a"]).unwrap().add(&free.element(&["c", "b"]).unwrap().neg()).unwrap();
        let alg = QuiverAlgebra::new("sq", q, Q, vec![rel], None).unwrap();
        assert_eq!(alg.hom_basis(0, 3).unwrap().len(), 1);
        let da = alg.reduce(&free.element(&["d", "a"]).unwrap());
        let cb = alg.reduce(&free.element(&["c", "b"]).unwrap());
        assert_eq!(da, cb);
    }

    #[test]
    fn short_relations_make_the_algebra_non_admissible() {
        let q = Quiver::new("M", &["1", "2"], &[("u", "1", "2"), ("v", "2", "1")]).unwrap();
        let free = QuiverAlgebra::free(q.clone(), Q);
        let vu = free.element(&["v", "u"]).unwrap().add(&RingElement::lazy(0, Q).neg()).unwrap();
        let alg = QuiverAlgebra::new("M", q, Q, vec![vu], None).unwrap();
        assert!(!alg.is_admissible());
    }

    #[test]
    fn opposite_round_trip() {
        let alg = a3();
        let op = alg.opposite();
        assert_eq!(op.name(), "A3^op");
        assert_eq!(op.hom_basis(2, 0).unwrap().len(), 1);
        assert_eq!(op.opposite(), alg);
    }
}
