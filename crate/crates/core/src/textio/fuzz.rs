//! Grammar-driven generator of random, well-sorted `.ppc` syntax trees.
//! Used to exercise the parser and printer on inputs nobody wrote by hand.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use super::ast::*;

struct Q {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<(String, String, String)>,
}

impl Q {
    fn arrows_op(&self, op: bool) -> Vec<(String, String, String)> {
        self.arrows
            .iter()
            .map(|(a, s, t)| if op { (a.clone(), t.clone(), s.clone()) } else { (a.clone(), s.clone(), t.clone()) })
            .collect()
    }

    /// Paths up to length 3 in composition order, with (source, target).
    fn paths(&self, op: bool) -> Vec<(PathExpr, String, String)> {
        let arrows = self.arrows_op(op);
        let mut out: Vec<(PathExpr, String, String)> =
            self.vertices.iter().map(|v| (PathExpr::Lazy(v.clone()), v.clone(), v.clone())).collect();
        let mut frontier: Vec<(Vec<String>, String, String)> =
            arrows.iter().map(|(a, s, t)| (vec![a.clone()], s.clone(), t.clone())).collect();
        for _ in 0..3 {
            let mut next = Vec::new();
            for (names, s, t) in &frontier {
                out.push((PathExpr::Arrows(names.clone()), s.clone(), t.clone()));
                for (a, s2, t2) in &arrows {
                    if *s2 == *t {
                        let mut n = vec![a.clone()];
                        n.extend(names.iter().cloned());
                        next.push((n, s.clone(), t2.clone()));
                    }
                }
            }
            frontier = next;
            if frontier.len() > 40 {
                frontier.truncate(40);
            }
        }
        out
    }
}

struct Alg {
    name: String,
    quiver: usize,
}

struct Gen<'a, R: Rng> {
    rng: &'a mut R,
    quivers: Vec<Q>,
    algebras: Vec<Alg>,
    modules: Vec<(String, AlgRef, usize)>,
    pps: Vec<(String, AlgRef, Vec<String>)>,
    pairs: Vec<(String, AlgRef, Vec<String>)>,
    fixtures: Vec<(String, AlgRef)>,
    auslanders: Vec<(String, Vec<String>)>,
    counter: usize,
    decls: Vec<Decl>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl<R: Rng> Gen<'_, R> {
    fn fresh(&mut self, prefix: &str) -> String {
        self.counter += 1;
        format!("{prefix}{}", self.counter)
    }

    fn coeff(&mut self) -> BigRational {
        let n = self.rng.gen_range(-4..=4);
        let d = if self.rng.gen_bool(0.2) { self.rng.gen_range(1..=5) } else { 1 };
        rat(n, d)
    }

    fn alg_ref(&mut self) -> (AlgRef, usize) {
        let a = &self.algebras[self.rng.gen_range(0..self.algebras.len())];
        let op = self.rng.gen_bool(0.25);
        (AlgRef { name: a.name.clone(), op }, a.quiver)
    }

    fn quiver(&mut self) {
        let name = self.fresh("Q");
        let nv = self.rng.gen_range(1..=4);
        let numeric = self.rng.gen_bool(0.5);
        let vertices: Vec<String> = (1..=nv).map(|i| if numeric { i.to_string() } else { format!("v{i}") }).collect();
        let na = self.rng.gen_range(0..=4);
        let arrows: Vec<(String, String, String)> = (0..na)
            .map(|i| {
                let s = vertices.choose(self.rng).unwrap().clone();
                let t = vertices.choose(self.rng).unwrap().clone();
                (format!("a{i}"), s, t)
            })
            .collect();
        self.decls.push(Decl::Quiver(QuiverDecl {
            name: name.clone(),
            vertices: vertices.clone(),
            arrows: arrows.iter().map(|(a, s, t)| ArrowDecl { name: a.clone(), source: s.clone(), target: t.clone() }).collect(),
        }));
        self.algebras.push(Alg { name: name.clone(), quiver: self.quivers.len() });
        self.quivers.push(Q { name, vertices, arrows });
    }

    fn algebra(&mut self) {
        let qi = self.rng.gen_range(0..self.quivers.len());
        let paths = self.quivers[qi].paths(false);
        let name = self.fresh("B");
        let mut relations = Vec::new();
        for _ in 0..self.rng.gen_range(0..=3) {
            let (_, s, t) = paths.choose(self.rng).unwrap().clone();
            let parallel: Vec<&(PathExpr, String, String)> = paths.iter().filter(|p| p.1 == s && p.2 == t).collect();
            let k = self.rng.gen_range(1..=3);
            let terms = (0..k).map(|_| (self.coeff(), parallel.choose(self.rng).unwrap().0.clone())).collect();
            relations.push(RingExpr { terms });
        }
        let nilpotent = self.rng.gen_bool(0.3).then(|| self.rng.gen_range(1..=5));
        self.decls.push(Decl::Algebra(AlgebraDecl { name: name.clone(), quiver: self.quivers[qi].name.clone(), relations, nilpotent }));
        self.algebras.push(Alg { name, quiver: qi });
    }

    fn matrix(&mut self, rows: u64, cols: u64) -> MatrixLit {
        (0..rows).map(|_| (0..cols).map(|_| self.coeff()).collect()).collect()
    }

    fn module(&mut self) {
        let (a, qi) = self.alg_ref();
        let name = self.fresh("M");
        let q = &self.quivers[qi];
        let vertices = q.vertices.clone();
        let arrows = q.arrows_op(a.op);
        let body = match self.rng.gen_range(0..4) {
            0 => ModuleBody::Projective(vertices.choose(self.rng).unwrap().clone()),
            1 => ModuleBody::Simple(vertices.choose(self.rng).unwrap().clone()),
            2 if self.modules.iter().any(|m| m.1 == a) => {
                let same: Vec<String> = self.modules.iter().filter(|m| m.1 == a).map(|m| m.0.clone()).collect();
                let k = self.rng.gen_range(1..=3);
                ModuleBody::Sum((0..k).map(|_| same.choose(self.rng).unwrap().clone()).collect())
            }
            _ => {
                let mut dims = Vec::new();
                for v in &vertices {
                    if self.rng.gen_bool(0.7) {
                        dims.push((v.clone(), self.rng.gen_range(0..=2)));
                    }
                }
                dims.shuffle(self.rng);
                let dim = |v: &str| dims.iter().find(|d: &&(String, u64)| d.0 == v).map_or(0, |d| d.1);
                let mut maps = Vec::new();
                for (an, s, t) in &arrows {
                    if self.rng.gen_bool(0.7) {
                        let (r, c) = (dim(t), dim(s));
                        maps.push((an.clone(), self.matrix(r, c)));
                    }
                }
                ModuleBody::Explicit { dims, maps }
            }
        };
        self.decls.push(Decl::Module(ModuleDecl { name: name.clone(), algebra: a.clone(), body }));
        self.modules.push((name, a, qi));
    }

    fn formula(&mut self, a: &AlgRef, qi: usize, free_sorts: &[String]) -> String {
        let name = self.fresh("f");
        let q = &self.quivers[qi];
        let vertices = q.vertices.clone();
        let paths = q.paths(a.op);
        let free: Vec<(String, String)> = free_sorts.iter().enumerate().map(|(i, s)| (format!("x{i}"), s.clone())).collect();
        let nb = self.rng.gen_range(0..=2);
        let bound: Vec<(String, String)> =
            (0..nb).map(|i| (format!("y{i}"), vertices.choose(self.rng).unwrap().clone())).collect();
        let all: Vec<(String, String)> = free.iter().chain(&bound).cloned().collect();
        let mut equations = Vec::new();
        if !all.is_empty() {
            for _ in 0..self.rng.gen_range(0..=3) {
                let sort = vertices.choose(self.rng).unwrap().clone();
                let mut terms = Vec::new();
                for _ in 0..self.rng.gen_range(1..=3) {
                    let (v, vs) = all.choose(self.rng).unwrap().clone();
                    let options: Vec<&(PathExpr, String, String)> = paths.iter().filter(|p| p.1 == vs && p.2 == sort).collect();
                    if options.is_empty() {
                        continue;
                    }
                    let p = options.choose(self.rng).unwrap().0.clone();
                    // a bare variable stands for the identity path
                    let p = match p {
                        PathExpr::Lazy(_) if self.rng.gen_bool(0.6) => None,
                        p => Some(p),
                    };
                    terms.push((self.coeff(), p, v));
                }
                if !terms.is_empty() {
                    equations.push(EqDecl { sort, terms });
                }
            }
        }
        self.decls.push(Decl::Pp(PpDecl { name: name.clone(), algebra: a.clone(), free, bound, equations }));
        self.pps.push((name.clone(), a.clone(), free_sorts.to_vec()));
        name
    }

    fn random_sorts(&mut self, qi: usize) -> Vec<String> {
        let vertices = self.quivers[qi].vertices.clone();
        (0..self.rng.gen_range(0..=2)).map(|_| vertices.choose(self.rng).unwrap().clone()).collect()
    }

    fn pair_with(&mut self, a: &AlgRef, qi: usize, sorts: &[String]) -> String {
        let top = self.formula(a, qi, sorts);
        let bottom = self.formula(a, qi, sorts);
        let name = self.fresh("P");
        let fixtures: Vec<String> = self.fixtures.iter().filter(|f| f.1 == *a).map(|f| f.0.clone()).collect();
        let testset = if !fixtures.is_empty() && self.rng.gen_bool(0.5) { fixtures.choose(self.rng).cloned() } else { None };
        self.decls.push(Decl::Pair(PairDecl { name: name.clone(), algebra: a.clone(), top, bottom, testset }));
        self.pairs.push((name.clone(), a.clone(), sorts.to_vec()));
        name
    }

    fn interp(&mut self) {
        let (source, sq) = self.alg_ref();
        let (target, tq) = self.alg_ref();
        let tqv = self.quivers[tq].vertices.clone();
        let tarrows = self.quivers[tq].arrows_op(target.op);
        let mut sorts = Vec::new();
        let mut sort_of = Vec::new();
        for v in &tqv {
            let s = self.random_sorts(sq);
            let p = self.pair_with(&source, sq, &s);
            sorts.push((v.clone(), p));
            sort_of.push((v.clone(), s));
        }
        let get = |v: &str| sort_of.iter().find(|x| x.0 == v).unwrap().1.clone();
        let mut arrows = Vec::new();
        for (a, s, t) in &tarrows {
            let mut fs = get(s);
            fs.extend(get(t));
            let f = self.formula(&source, sq, &fs);
            arrows.push((a.clone(), f));
        }
        let fixtures: Vec<String> = self.fixtures.iter().filter(|f| f.1 == source).map(|f| f.0.clone()).collect();
        let mode = match self.rng.gen_range(0..3) {
            0 => None,
            1 => Some(ModeDecl::Exact),
            _ => fixtures.choose(self.rng).cloned().map(ModeDecl::TestSet),
        };
        let name = self.fresh("I");
        sorts.shuffle(self.rng);
        self.decls.push(Decl::Interp(InterpDecl { name: name.clone(), source: source.clone(), target: target.clone(), sorts, arrows, mode }));
        if let Some(f) = fixtures.first() {
            let fname = self.fresh("F");
            self.decls.push(Decl::Fixture(FixtureDecl { name: fname.clone(), body: FixtureBody::Image { interp: name, fixture: f.clone() } }));
            self.fixtures.push((fname, target));
        }
    }

    fn fixture(&mut self) {
        if self.modules.is_empty() {
            return;
        }
        let (_, a, qi) = self.modules.choose(self.rng).unwrap().clone();
        let name = self.fresh("F");
        let q = &self.quivers[qi];
        let body = if q.vertices.len() == 1 && q.arrows.len() == 1 && self.rng.gen_bool(0.5) {
            FixtureBody::Jordan { algebra: a.clone(), max_dim: self.rng.gen_range(1..=3) }
        } else {
            let same: Vec<String> = self.modules.iter().filter(|m| m.1 == a).map(|m| m.0.clone()).collect();
            let k = self.rng.gen_range(1..=3);
            FixtureBody::List((0..k).map(|_| same.choose(self.rng).unwrap().clone()).collect())
        };
        self.decls.push(Decl::Fixture(FixtureDecl { name: name.clone(), body }));
        self.fixtures.push((name, a));
    }

    fn auslander(&mut self) {
        if self.modules.is_empty() {
            return;
        }
        let (_, a, _) = self.modules.choose(self.rng).unwrap().clone();
        let same: Vec<String> = self.modules.iter().filter(|m| m.1 == a).map(|m| m.0.clone()).collect();
        let name = self.fresh("S");
        self.decls.push(Decl::Auslander(AuslanderDecl { name: name.clone(), algebra: a, modules: same.clone() }));
        for _ in 0..self.rng.gen_range(1..=3) {
            let kind = if self.rng.gen_bool(0.5) { SModuleKind::Projective } else { SModuleKind::Simple };
            let sname = self.fresh("T");
            let summand = same.choose(self.rng).unwrap().clone();
            self.decls.push(Decl::SModule(SModuleDecl { name: sname, auslander: name.clone(), kind, summand }));
        }
        self.auslanders.push((name, same));
    }
}

/// A random file whose declarations all resolve and are well sorted.
pub fn random_file<R: Rng>(rng: &mut R) -> SourceFile {
    let field = if rng.gen_bool(0.5) { FieldDecl::Rationals } else { FieldDecl::Prime(*[2u64, 3, 5, 101].choose(rng).unwrap()) };
    let mut g = Gen {
        rng,
        quivers: Vec::new(),
        algebras: Vec::new(),
        modules: Vec::new(),
        pps: Vec::new(),
        pairs: Vec::new(),
        fixtures: Vec::new(),
        auslanders: Vec::new(),
        counter: 0,
        decls: Vec::new(),
    };
    g.quiver();
    let steps = g.rng.gen_range(3..=14);
    for _ in 0..steps {
        match g.rng.gen_range(0..9) {
            0 => g.quiver(),
            1 => g.algebra(),
            2 | 3 => g.module(),
            4 => {
                let (a, qi) = g.alg_ref();
                let s = g.random_sorts(qi);
                g.formula(&a, qi, &s);
            }
            5 => {
                let (a, qi) = g.alg_ref();
                let s = g.random_sorts(qi);
                g.pair_with(&a, qi, &s);
            }
            6 => g.interp(),
            7 => g.fixture(),
            _ => g.auslander(),
        }
    }
    SourceFile { field, decls: g.decls }
}
