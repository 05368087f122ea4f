//! Turns a parsed file into library objects: algebras, representations,
//! certified pairs, validated interpretation functors and fixtures.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ast::*;
use super::parse;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};
use crate::funcat::{auslander_algebra, Auslander, FinModule};
use crate::interp::{InterpretationFunctor, ValidationMode, ValidationReport};
use crate::ppcore::{Equation, PpFormula, PpPair, Var};
use crate::ppeval::{certify, jordan_test_set, Mode};
use crate::quivalg::{Path, Quiver, QuiverAlgebra, RingElement};
use crate::repmod::{direct_sum, Representation};

/// Default size bound for Jordan test sets when none is named.
pub const DEFAULT_JORDAN_DIM: usize = 3;

/// Everything declared in one file, elaborated in declaration order.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub field: Field,
    pub source: SourceFile,
    pub quivers: BTreeMap<String, Quiver>,
    pub algebras: BTreeMap<String, Arc<QuiverAlgebra>>,
    opposites: BTreeMap<String, Arc<QuiverAlgebra>>,
    pub modules: BTreeMap<String, Representation>,
    pub formulas: BTreeMap<String, PpFormula>,
    pub pairs: BTreeMap<String, PpPair>,
    pub interps: BTreeMap<String, InterpretationFunctor>,
    pub validations: BTreeMap<String, ValidationReport>,
    pub fixtures: BTreeMap<String, Vec<Representation>>,
    pub auslanders: BTreeMap<String, Auslander>,
    pub smodules: BTreeMap<String, FinModule>,
}

fn missing(kind: &str, name: &str) -> Error {
    Error::InvalidInput(format!("no {kind} named `{name}`"))
}

pub fn scalar_of(field: Field, c: &BigRational) -> Result<Scalar> {
    field.from_ratio(c.numer(), c.denom())
}

/// Rationals print as themselves, residues as their least non-negative
/// representative.
pub fn rational_of(s: &Scalar) -> BigRational {
    match s {
        Scalar::Rat(r) => r.clone(),
        Scalar::Mod(v, _) => BigRational::from_integer(BigInt::from(*v)),
    }
}

impl Workspace {
    pub fn load(text: &str) -> Result<Workspace> {
        Workspace::elaborate(parse(text)?)
    }

    pub fn elaborate(source: SourceFile) -> Result<Workspace> {
        let field = match source.field {
            FieldDecl::Rationals => Field::Rationals,
            FieldDecl::Prime(p) => Field::prime(p)?,
        };
        let mut ws = Workspace {
            field,
            source: source.clone(),
            quivers: BTreeMap::new(),
            algebras: BTreeMap::new(),
            opposites: BTreeMap::new(),
            modules: BTreeMap::new(),
            formulas: BTreeMap::new(),
            pairs: BTreeMap::new(),
            interps: BTreeMap::new(),
            validations: BTreeMap::new(),
            fixtures: BTreeMap::new(),
            auslanders: BTreeMap::new(),
            smodules: BTreeMap::new(),
        };
        for d in &source.decls {
            ws.declare(d)?;
        }
        Ok(ws)
    }

    fn insert_algebra(&mut self, a: QuiverAlgebra) {
        let name = a.name().to_string();
        let op = Arc::new(a.opposite());
        self.algebras.insert(name.clone(), Arc::new(a));
        self.opposites.insert(name, op);
    }

    pub fn algebra(&self, r: &AlgRef) -> Result<&Arc<QuiverAlgebra>> {
        let map = if r.op { &self.opposites } else { &self.algebras };
        map.get(&r.name).ok_or_else(|| missing("algebra", &r.name))
    }

    /// The opposite of a declared algebra, shared so that right modules
    /// compare by pointer.
    pub fn opposite_of(&self, alg: &QuiverAlgebra) -> Option<&Arc<QuiverAlgebra>> {
        match alg.name().strip_suffix("^op") {
            Some(base) => self.algebras.get(base),
            None => self.opposites.get(alg.name()),
        }
    }

    pub fn module(&self, name: &str) -> Result<&Representation> {
        self.modules.get(name).ok_or_else(|| missing("module", name))
    }

    pub fn formula(&self, name: &str) -> Result<&PpFormula> {
        self.formulas.get(name).ok_or_else(|| missing("formula", name))
    }

    pub fn pair(&self, name: &str) -> Result<&PpPair> {
        self.pairs.get(name).ok_or_else(|| missing("pair", name))
    }

    pub fn interp(&self, name: &str) -> Result<&InterpretationFunctor> {
        self.interps.get(name).ok_or_else(|| missing("interpretation", name))
    }

    pub fn fixture(&self, name: &str) -> Result<&[Representation]> {
        self.fixtures.get(name).map(Vec::as_slice).ok_or_else(|| missing("fixture", name))
    }

    pub fn auslander(&self, name: &str) -> Result<&Auslander> {
        self.auslanders.get(name).ok_or_else(|| missing("auslander algebra", name))
    }

    pub fn smodule(&self, name: &str) -> Result<&FinModule> {
        self.smodules.get(name).ok_or_else(|| missing("functor", name))
    }

    /// Modules named either directly or as a fixture.
    pub fn module_list(&self, name: &str) -> Result<Vec<Representation>> {
        if let Some(m) = self.modules.get(name) {
            Ok(vec![m.clone()])
        } else {
            self.fixture(name).map(<[_]>::to_vec)
        }
    }

    fn vertex(alg: &QuiverAlgebra, v: &str) -> Result<usize> {
        alg.vertex(v)
    }

    fn path(alg: &QuiverAlgebra, p: &PathExpr) -> Result<Path> {
        match p {
            PathExpr::Lazy(v) => Ok(Path::lazy(Self::vertex(alg, v)?)),
            PathExpr::Arrows(names) => {
                let names: Vec<&str> = names.iter().map(String::as_str).collect();
                alg.path_from_names(&names)
            }
        }
    }

    fn ring(&self, alg: &QuiverAlgebra, terms: &[(BigRational, PathExpr)]) -> Result<RingElement> {
        let paths: Vec<Path> = terms.iter().map(|(_, p)| Self::path(alg, p)).collect::<Result<_>>()?;
        let first = paths.first().ok_or_else(|| Error::InvalidInput("empty relation".into()))?;
        let mut r = RingElement::zero(first.source, first.target);
        for ((c, _), p) in terms.iter().zip(paths) {
            r.add_term(p, scalar_of(self.field, c)?);
        }
        Ok(r)
    }

    fn default_tests(alg: &Arc<QuiverAlgebra>) -> Result<Vec<Representation>> {
        jordan_test_set(alg, DEFAULT_JORDAN_DIM)
    }

    fn declare(&mut self, d: &Decl) -> Result<()> {
        match d {
            Decl::Quiver(q) => {
                let vs: Vec<&str> = q.vertices.iter().map(String::as_str).collect();
                let arrows: Vec<(&str, &str, &str)> =
                    q.arrows.iter().map(|a| (a.name.as_str(), a.source.as_str(), a.target.as_str())).collect();
                let quiver = Quiver::new(&q.name, &vs, &arrows)?;
                self.insert_algebra(QuiverAlgebra::free(quiver.clone(), self.field));
                self.quivers.insert(q.name.clone(), quiver);
            }
            Decl::Algebra(a) => {
                let quiver = self.quivers.get(&a.quiver).ok_or_else(|| missing("quiver", &a.quiver))?.clone();
                let free = QuiverAlgebra::free(quiver.clone(), self.field);
                let rels = a.relations.iter().map(|r| self.ring(&free, &r.terms)).collect::<Result<Vec<_>>>()?;
                let alg = QuiverAlgebra::new(&a.name, quiver, self.field, rels, a.nilpotent.map(|n| n as usize))?;
                self.insert_algebra(alg);
            }
            Decl::Module(m) => {
                let alg = self.algebra(&m.algebra)?.clone();
                let rep = match &m.body {
                    ModuleBody::Projective(v) => Representation::projective(alg.clone(), Self::vertex(&alg, v)?)?,
                    ModuleBody::Simple(v) => Representation::simple(alg.clone(), Self::vertex(&alg, v)?)?,
                    ModuleBody::Sum(parts) => {
                        let parts: Vec<Representation> =
                            parts.iter().map(|p| self.module(p).cloned()).collect::<Result<_>>()?;
                        direct_sum(&parts)?.0
                    }
                    ModuleBody::Explicit { dims, maps } => {
                        let q = alg.quiver();
                        let mut dv = vec![0usize; q.vertex_count()];
                        for (v, n) in dims {
                            dv[Self::vertex(&alg, v)?] = *n as usize;
                        }
                        let mats = q
                            .arrows()
                            .iter()
                            .map(|a| match maps.iter().find(|(n, _)| *n == a.name) {
                                None => Ok(Matrix::zeros(self.field, dv[a.target], dv[a.source])),
                                Some((_, lit)) => {
                                    let rows = lit
                                        .iter()
                                        .map(|r| r.iter().map(|c| scalar_of(self.field, c)).collect::<Result<Vec<_>>>())
                                        .collect::<Result<Vec<_>>>()?;
                                    Matrix::from_rows(self.field, rows, dv[a.source])
                                }
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Representation::new(alg.clone(), dv, mats)
                            .map_err(|e| Error::InvalidInput(format!("module `{}`: {e}", m.name)))?
                    }
                };
                self.modules.insert(m.name.clone(), rep);
            }
            Decl::Pp(p) => {
                let alg = self.algebra(&p.algebra)?.clone();
                let mk = |vs: &[(String, String)]| -> Result<Vec<Var>> {
                    vs.iter().map(|(n, s)| Ok(Var::new(n.clone(), Self::vertex(&alg, s)?))).collect()
                };
                let free = mk(&p.free)?;
                let bound = mk(&p.bound)?;
                let index: BTreeMap<&str, usize> =
                    free.iter().chain(&bound).enumerate().map(|(i, v)| (v.name.as_str(), i)).collect();
                let mut equations = Vec::new();
                for e in &p.equations {
                    let sort = Self::vertex(&alg, &e.sort)?;
                    let mut terms = Vec::new();
                    for (c, path, var) in &e.terms {
                        let path = match path {
                            Some(pe) => Self::path(&alg, pe)?,
                            None => Path::lazy(sort),
                        };
                        let i = *index.get(var.as_str()).ok_or_else(|| Error::UnknownVariable(var.clone()))?;
                        terms.push((i, RingElement::from_path(path, scalar_of(self.field, c)?)));
                    }
                    equations.push(Equation::new(sort, terms));
                }
                self.formulas.insert(p.name.clone(), PpFormula::new(alg, free, bound, equations)?);
            }
            Decl::Pair(p) => {
                let alg = self.algebra(&p.algebra)?.clone();
                let pair = PpPair::new(self.formula(&p.top)?.clone(), self.formula(&p.bottom)?.clone())?;
                let certified = match &p.testset {
                    Some(t) => certify(&pair, Mode::TestSet(self.fixture(t)?))?,
                    None if alg.is_admissible() => certify(&pair, Mode::Exact)?,
                    None => certify(&pair, Mode::TestSet(&Self::default_tests(&alg)?))?,
                };
                let pair = certified.ok_or_else(|| {
                    Error::InvalidInput(format!("pair `{}`: `{}` does not imply `{}`", p.name, p.bottom, p.top))
                })?;
                self.pairs.insert(p.name.clone(), pair);
            }
            Decl::Interp(i) => {
                let source = self.algebra(&i.source)?.clone();
                let target = self.algebra(&i.target)?.clone();
                let q = target.quiver();
                let sorts = q
                    .vertices()
                    .iter()
                    .map(|v| {
                        let (_, p) = i.sorts.iter().find(|(w, _)| w == v).ok_or_else(|| missing("sort", v))?;
                        self.pair(p).cloned()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let rhos = q
                    .arrows()
                    .iter()
                    .map(|a| {
                        let (_, f) = i.arrows.iter().find(|(b, _)| *b == a.name).ok_or_else(|| missing("arrow map", &a.name))?;
                        self.formula(f).cloned()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mode = match &i.mode {
                    Some(ModeDecl::Exact) => ValidationMode::Exact,
                    Some(ModeDecl::TestSet(t)) => ValidationMode::TestSet(self.fixture(t)?.to_vec()),
                    None if source.is_admissible() => ValidationMode::Exact,
                    None => ValidationMode::TestSet(Self::default_tests(&source)?),
                };
                let mut f = InterpretationFunctor::new(&i.name, source, target, sorts, rhos, mode)?;
                let report = f.validate()?;
                self.validations.insert(i.name.clone(), report);
                self.interps.insert(i.name.clone(), f);
            }
            Decl::Fixture(f) => {
                let list = match &f.body {
                    FixtureBody::List(names) => names.iter().map(|n| self.module(n).cloned()).collect::<Result<_>>()?,
                    FixtureBody::Jordan { algebra, max_dim } => jordan_test_set(self.algebra(algebra)?, *max_dim as usize)?,
                    FixtureBody::Image { interp, fixture } => {
                        let i = self.interp(interp)?;
                        self.fixture(fixture)?.iter().map(|m| i.apply(m)).collect::<Result<_>>()?
                    }
                };
                self.fixtures.insert(f.name.clone(), list);
            }
            Decl::Auslander(a) => {
                let mods: Vec<Representation> = a.modules.iter().map(|m| self.module(m).cloned()).collect::<Result<_>>()?;
                self.auslanders.insert(a.name.clone(), auslander_algebra(&mods, &a.modules)?);
            }
            Decl::SModule(s) => {
                let aus = self.auslander(&s.auslander)?;
                let decl = self
                    .source
                    .decls
                    .iter()
                    .find_map(|d| match d {
                        Decl::Auslander(a) if a.name == s.auslander => Some(a),
                        _ => None,
                    })
                    .expect("parser resolved the auslander algebra");
                let i = decl.modules.iter().position(|m| *m == s.summand).expect("parser resolved the summand");
                let m = match s.kind {
                    SModuleKind::Projective => FinModule::projective(&aus.algebra, i)?,
                    SModuleKind::Simple => FinModule::simple(&aus.algebra, i)?,
                };
                self.smodules.insert(s.name.clone(), m);
            }
        }
        Ok(())
    }

    /// Names of the declared S-modules over one Auslander algebra, in
    /// declaration order.
    pub fn smodules_over(&self, auslander: &str) -> Vec<String> {
        self.source
            .decls
            .iter()
            .filter_map(|d| match d {
                Decl::SModule(s) if s.auslander == auslander => Some(s.name.clone()),
                _ => None,
            })
            .collect()
    }
}

/// Reference to an algebra by name, recognising opposites.
pub fn alg_ref_of(alg: &QuiverAlgebra) -> AlgRef {
    match alg.name().strip_suffix("^op") {
        Some(base) => AlgRef { name: base.to_string(), op: true },
        None => AlgRef { name: alg.name().to_string(), op: false },
    }
}

/// A formula as a declaration, ready for printing.
pub fn formula_decl(name: &str, f: &PpFormula) -> PpDecl {
    let alg = f.algebra();
    let q = alg.quiver();
    let vname = |v: usize| q.vertex_name(v).to_string();
    let path = |p: &Path| {
        if p.is_lazy() {
            PathExpr::Lazy(vname(p.source))
        } else {
            PathExpr::Arrows(p.arrows.iter().rev().map(|&a| q.arrow(a).name.clone()).collect())
        }
    };
    let var_list = |vs: &[Var]| vs.iter().map(|v| (v.name.clone(), vname(v.sort))).collect();
    let equations = f
        .equations()
        .iter()
        .map(|e| EqDecl {
            sort: vname(e.sort),
            terms: e
                .coeffs
                .iter()
                .flat_map(|(&i, r)| {
                    let var = f.var(i).name.clone();
                    r.terms()
                        .map(|(p, c)| {
                            let pe = if p.is_lazy() { None } else { Some(path(p)) };
                            (rational_of(c), pe, var.clone())
                        })
                        .collect::<Vec<_>>()
                })
                .collect(),
        })
        .filter(|e: &EqDecl| !e.terms.is_empty())
        .collect();
    PpDecl {
        name: name.to_string(),
        algebra: alg_ref_of(alg),
        free: var_list(f.free()),
        bound: var_list(f.bound()),
        equations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ppeval::{eval, eval_pair};
    use crate::textio::{print_decl, ast::Decl};

    const A2: &str = "field Q;
quiver A2 { vertices 1 2; arrow a: 1 -> 2; }
module S1 = simple(A2, 1);
module P1 = proj(A2, 1);
module P2 = proj(A2, 2);
pp top1 over A2 { free x:1; }
pp ann over A2 { free x:1; eq 2: a*x = 0; }
pp zero1 over A2 { free x:1; eq 1: x = 0; }
pair Q1 over A2 = ann / zero1;
";

    #[test]
    fn a2_file() {
        let ws = Workspace::load(A2).unwrap();
        let q1 = ws.pair("Q1").unwrap();
        assert_eq!(eval_pair(q1, ws.module("S1").unwrap()).unwrap(), 1);
        assert_eq!(eval_pair(q1, ws.module("P1").unwrap()).unwrap(), 0);
        assert_eq!(eval(ws.formula("top1").unwrap(), ws.module("P1").unwrap()).unwrap().dim(), 1);
    }

    #[test]
    fn formulas_print_back() {
        let ws = Workspace::load(A2).unwrap();
        let d = formula_decl("ann", ws.formula("ann").unwrap());
        let text = format!("quiver A2 {{ vertices 1 2; arrow a: 1 -> 2; }}\n{}", print_decl(&Decl::Pp(d)));
        let again = Workspace::load(&text).unwrap();
        assert_eq!(again.formula("ann").unwrap(), ws.formula("ann").unwrap());
    }

    #[test]
    fn bad_pairs_and_modules_are_rejected() {
        let bad = format!("{A2}pair B over A2 = zero1 / ann;");
        assert!(matches!(Workspace::load(&bad), Err(Error::InvalidInput(_))));
        let rel = "quiver L { vertices v; arrow t: v -> v; }
algebra A over L { rel t.t; nilpotent 2; }
module M over A { dim v = 2; map t = [[1, 0], [0, 1]]; }";
        assert!(matches!(Workspace::load(rel), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn corpus_elaborates() {
        for (name, text) in crate::textio::corpus::FIXTURES {
            let ws = Workspace::load(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            for (f, rep) in &ws.validations {
                assert!(rep.valid(), "{name}: {f} does not validate: {rep:?}");
            }
        }
    }
}
