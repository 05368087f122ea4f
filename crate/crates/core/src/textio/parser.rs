//! Recursive-descent parser with name resolution and sort checking.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ast::*;
use super::lexer::{lex, Tok, Token};
use crate::error::{Error, Result};

struct QuiverInfo {
    vertices: Vec<String>,
    arrows: Vec<(String, String, String)>,
}

impl QuiverInfo {
    fn arrow(&self, name: &str, op: bool) -> Option<(String, String)> {
        self.arrows
            .iter()
            .find(|a| a.0 == name)
            .map(|(_, s, t)| if op { (t.clone(), s.clone()) } else { (s.clone(), t.clone()) })
    }
}

#[derive(Default)]
struct Symbols {
    quivers: BTreeMap<String, QuiverInfo>,
    algebras: BTreeMap<String, String>,
    modules: BTreeMap<String, AlgRef>,
    pps: BTreeMap<String, (AlgRef, Vec<String>)>,
    pairs: BTreeMap<String, (AlgRef, Vec<String>)>,
    interps: BTreeMap<String, (AlgRef, AlgRef)>,
    fixtures: BTreeMap<String, AlgRef>,
    auslanders: BTreeMap<String, Vec<String>>,
    smodules: BTreeSet<String>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    syms: Symbols,
}

pub fn parse(text: &str) -> Result<SourceFile> {
    let mut p = Parser { toks: lex(text)?, pos: 0, syms: Symbols::default() };
    p.file()
}

type Pos = (usize, usize);

fn alg_display(a: &AlgRef) -> String {
    if a.op {
        format!("{}^op", a.name)
    } else {
        a.name.clone()
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> Pos {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Syntax { line, col, expected: expected.into(), found: self.peek().describe() })
    }

    fn sort_err<T>(at: Pos, message: String) -> Result<T> {
        Err(Error::Sort { line: at.0, col: at.1, message })
    }

    fn unresolved<T>(at: Pos, name: &str) -> Result<T> {
        Err(Error::UnresolvedReference { line: at.0, col: at.1, name: name.into() })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == s)
    }

    fn sym(&mut self, s: &str) -> Result<()> {
        if self.is_sym(s) {
            self.bump();
            Ok(())
        } else {
            self.fail(&format!("`{s}`"))
        }
    }

    fn kw(&mut self, s: &str) -> Result<()> {
        if self.is_kw(s) {
            self.bump();
            Ok(())
        } else {
            self.fail(&format!("`{s}`"))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        let at = self.here();
        match self.peek().clone() {
            Tok::Ident(s) if s != "id" => {
                self.bump();
                Ok((s, at))
            }
            _ => self.fail("a name"),
        }
    }

    /// Vertex names may be numerals.
    fn vertex_name(&mut self) -> Result<(String, Pos)> {
        let at = self.here();
        match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                Ok((s, at))
            }
            Tok::Ident(s) if s != "id" => {
                self.bump();
                Ok((s, at))
            }
            _ => self.fail("a vertex name"),
        }
    }

    fn uint(&mut self) -> Result<(u64, Pos)> {
        let at = self.here();
        match self.peek().clone() {
            Tok::Int(s) => match s.parse::<u64>() {
                Ok(n) => {
                    self.bump();
                    Ok((n, at))
                }
                Err(_) => self.fail("a number below 2^64"),
            },
            _ => self.fail("a number"),
        }
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                s.parse::<BigInt>().expect("digits")
            }
            _ => return self.fail("a number"),
        };
        if self.is_sym("/") {
            self.bump();
            let at = self.here();
            let den = match self.peek().clone() {
                Tok::Int(s) => s.parse::<BigInt>().expect("digits"),
                _ => return self.fail("a denominator"),
            };
            if den.is_zero() {
                return Err(Error::Syntax { line: at.0, col: at.1, expected: "a nonzero denominator".into(), found: "`0`".into() });
            }
            self.bump();
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn signed_rational(&mut self) -> Result<BigRational> {
        if self.is_sym("-") {
            self.bump();
            Ok(-self.rational()?)
        } else {
            self.rational()
        }
    }

    fn new_name(&self, taken: bool, at: Pos, kind: &str, name: &str) -> Result<()> {
        if taken {
            Self::sort_err(at, format!("{kind} `{name}` is already declared"))
        } else {
            Ok(())
        }
    }

    fn file(&mut self) -> Result<SourceFile> {
        let mut field = FieldDecl::Rationals;
        if self.is_kw("field") {
            self.bump();
            if self.is_kw("Q") {
                self.bump();
            } else if self.is_kw("F") {
                self.bump();
                let (p, at) = self.uint()?;
                if p >= 1 << 31 || !is_prime(p) {
                    return Err(Error::Syntax { line: at.0, col: at.1, expected: "a prime below 2^31".into(), found: format!("`{p}`") });
                }
                field = FieldDecl::Prime(p);
            } else {
                return self.fail("`Q` or `F`");
            }
            self.sym(";")?;
        }
        let mut decls = Vec::new();
        while *self.peek() != Tok::Eof {
            decls.push(self.decl()?);
        }
        Ok(SourceFile { field, decls })
    }

    fn decl(&mut self) -> Result<Decl> {
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return self.fail("a declaration"),
        };
        match kw.as_str() {
            "quiver" => self.quiver().map(Decl::Quiver),
            "algebra" => self.algebra().map(Decl::Algebra),
            "module" | "rightmodule" => self.module().map(Decl::Module),
            "pp" => self.pp().map(Decl::Pp),
            "pair" => self.pair().map(Decl::Pair),
            "interp" => self.interp().map(Decl::Interp),
            "fixture" => self.fixture().map(Decl::Fixture),
            "auslander" => self.auslander().map(Decl::Auslander),
            "smodule" => self.smodule().map(Decl::SModule),
            _ => self.fail("a declaration"),
        }
    }

    fn quiver(&mut self) -> Result<QuiverDecl> {
        self.kw("quiver")?;
        let (name, at) = self.ident()?;
        self.new_name(self.syms.quivers.contains_key(&name), at, "quiver", &name)?;
        self.new_name(self.syms.algebras.contains_key(&name), at, "algebra", &name)?;
        self.sym("{")?;
        self.kw("vertices")?;
        let mut vertices = Vec::new();
        while !self.is_sym(";") {
            let (v, at) = self.vertex_name()?;
            if vertices.contains(&v) {
                return Self::sort_err(at, format!("vertex `{v}` is listed twice"));
            }
            vertices.push(v);
        }
        self.sym(";")?;
        let mut arrows = Vec::new();
        while self.is_kw("arrow") {
            self.bump();
            let (a, at) = self.ident()?;
            if arrows.iter().any(|x: &ArrowDecl| x.name == a) {
                return Self::sort_err(at, format!("arrow `{a}` is declared twice"));
            }
            self.sym(":")?;
            let (s, sat) = self.vertex_name()?;
            self.sym("->")?;
            let (t, tat) = self.vertex_name()?;
            for (v, p) in [(&s, sat), (&t, tat)] {
                if !vertices.contains(v) {
                    return Self::unresolved(p, v);
                }
            }
            self.sym(";")?;
            arrows.push(ArrowDecl { name: a, source: s, target: t });
        }
        self.sym("}")?;
        let info = QuiverInfo {
            vertices: vertices.clone(),
            arrows: arrows.iter().map(|a| (a.name.clone(), a.source.clone(), a.target.clone())).collect(),
        };
        self.syms.quivers.insert(name.clone(), info);
        self.syms.algebras.insert(name.clone(), name.clone());
        Ok(QuiverDecl { name, vertices, arrows })
    }

    fn alg_ref(&mut self) -> Result<AlgRef> {
        let (name, at) = self.ident()?;
        if !self.syms.algebras.contains_key(&name) {
            return Self::unresolved(at, &name);
        }
        let mut op = false;
        if self.is_sym("^") {
            self.bump();
            self.kw("op")?;
            op = true;
        }
        Ok(AlgRef { name, op })
    }

    fn quiver_of(&self, a: &AlgRef) -> &QuiverInfo {
        &self.syms.quivers[&self.syms.algebras[&a.name]]
    }

    fn vertex_in(&mut self, a: &AlgRef) -> Result<String> {
        let (v, at) = self.vertex_name()?;
        if !self.quiver_of(a).vertices.contains(&v) {
            return Self::unresolved(at, &v);
        }
        Ok(v)
    }

    /// Parses a path and returns it with its (source, target) in
    /// application order.
    fn path(&mut self, a: &AlgRef) -> Result<(PathExpr, String, String, Pos)> {
        let at = self.here();
        if self.is_kw("id") {
            self.bump();
            self.sym("(")?;
            let v = self.vertex_in(a)?;
            self.sym(")")?;
            return Ok((PathExpr::Lazy(v.clone()), v.clone(), v, at));
        }
        let mut names = vec![self.ident()?];
        while self.is_sym(".") {
            self.bump();
            names.push(self.ident()?);
        }
        let q = self.quiver_of(a);
        let mut ends = Vec::new();
        for (n, p) in &names {
            match q.arrow(n, a.op) {
                Some(st) => ends.push(st),
                None => return Self::unresolved(*p, n),
            }
        }
        // composition order: the last arrow is applied first
        for k in 0..names.len() - 1 {
            if ends[k + 1].1 != ends[k].0 {
                return Self::sort_err(
                    names[k].1,
                    format!("arrow `{}` starts at `{}` but `{}` ends at `{}`", names[k].0, ends[k].0, names[k + 1].0, ends[k + 1].1),
                );
            }
        }
        let source = ends.last().unwrap().0.clone();
        let target = ends[0].1.clone();
        Ok((PathExpr::Arrows(names.into_iter().map(|n| n.0).collect()), source, target, at))
    }

    fn algebra(&mut self) -> Result<AlgebraDecl> {
        self.kw("algebra")?;
        let (name, at) = self.ident()?;
        self.new_name(self.syms.algebras.contains_key(&name), at, "algebra", &name)?;
        self.kw("over")?;
        let (quiver, qat) = self.ident()?;
        if !self.syms.quivers.contains_key(&quiver) {
            return Self::unresolved(qat, &quiver);
        }
        let base = AlgRef { name: quiver.clone(), op: false };
        self.sym("{")?;
        let mut relations = Vec::new();
        while self.is_kw("rel") {
            self.bump();
            let mut terms = Vec::new();
            let mut ends: Option<(String, String)> = None;
            let mut sign = BigRational::one();
            if self.is_sym("-") {
                self.bump();
                sign = -sign;
            }
            loop {
                let c = if matches!(self.peek(), Tok::Int(_)) {
                    let c = self.rational()?;
                    self.sym("*")?;
                    c
                } else {
                    BigRational::one()
                };
                let (p, s, t, pat) = self.path(&base)?;
                match &ends {
                    None => ends = Some((s, t)),
                    Some(e) if *e == (s.clone(), t.clone()) => {}
                    Some(e) => {
                        return Self::sort_err(pat, format!("relation mixes paths {}→{} and {}→{}", e.0, e.1, s, t))
                    }
                }
                terms.push((&sign * &c, p));
                if self.is_sym("+") {
                    sign = BigRational::one();
                } else if self.is_sym("-") {
                    sign = -BigRational::one();
                } else {
                    break;
                }
                self.bump();
            }
            self.sym(";")?;
            relations.push(RingExpr { terms });
        }
        let mut nilpotent = None;
        if self.is_kw("nilpotent") {
            self.bump();
            nilpotent = Some(self.uint()?.0);
            self.sym(";")?;
        }
        self.sym("}")?;
        self.syms.algebras.insert(name.clone(), quiver.clone());
        Ok(AlgebraDecl { name, quiver, relations, nilpotent })
    }

    fn module_ref(&mut self) -> Result<(String, AlgRef)> {
        let (n, at) = self.ident()?;
        match self.syms.modules.get(&n) {
            Some(a) => Ok((n, a.clone())),
            None => Self::unresolved(at, &n),
        }
    }

    fn module(&mut self) -> Result<ModuleDecl> {
        let right = self.is_kw("rightmodule");
        self.bump();
        let (name, at) = self.ident()?;
        self.new_name(self.syms.modules.contains_key(&name), at, "module", &name)?;
        let (algebra, body) = if self.is_sym("=") {
            if right {
                return self.fail("`over`");
            }
            self.bump();
            let (ctor, cat) = self.ident()?;
            self.sym("(")?;
            let out = match ctor.as_str() {
                "proj" | "simple" => {
                    let a = self.alg_ref()?;
                    self.sym(",")?;
                    let v = self.vertex_in(&a)?;
                    let body = if ctor == "proj" { ModuleBody::Projective(v) } else { ModuleBody::Simple(v) };
                    (a, body)
                }
                "sum" => {
                    let (first, a) = self.module_ref()?;
                    let mut parts = vec![first];
                    while self.is_sym(",") {
                        self.bump();
                        let pat = self.here();
                        let (m, b) = self.module_ref()?;
                        if b != a {
                            return Self::sort_err(pat, format!("`{m}` is over {}, not {}", alg_display(&b), alg_display(&a)));
                        }
                        parts.push(m);
                    }
                    (a, ModuleBody::Sum(parts))
                }
                _ => {
                    return Err(Error::Syntax {
                        line: cat.0,
                        col: cat.1,
                        expected: "`proj`, `simple` or `sum`".into(),
                        found: format!("`{ctor}`"),
                    })
                }
            };
            self.sym(")")?;
            self.sym(";")?;
            out
        } else {
            self.kw("over")?;
            let mut a = self.alg_ref()?;
            a.op ^= right;
            self.sym("{")?;
            let mut dims: Vec<(String, u64)> = Vec::new();
            while self.is_kw("dim") {
                self.bump();
                let vat = self.here();
                let v = self.vertex_in(&a)?;
                if dims.iter().any(|d| d.0 == v) {
                    return Self::sort_err(vat, format!("dimension at `{v}` given twice"));
                }
                self.sym("=")?;
                let (d, _) = self.uint()?;
                self.sym(";")?;
                dims.push((v, d));
            }
            let dim_of = |v: &str, dims: &[(String, u64)]| dims.iter().find(|d| d.0 == v).map_or(0, |d| d.1);
            let mut maps: Vec<(String, MatrixLit)> = Vec::new();
            while self.is_kw("map") {
                self.bump();
                let (arrow, aat) = self.ident()?;
                let Some((s, t)) = self.quiver_of(&a).arrow(&arrow, a.op) else {
                    return Self::unresolved(aat, &arrow);
                };
                if maps.iter().any(|m| m.0 == arrow) {
                    return Self::sort_err(aat, format!("map for `{arrow}` given twice"));
                }
                self.sym("=")?;
                let mat_at = self.here();
                let m = self.matrix()?;
                self.sym(";")?;
                let (rows, cols) = (dim_of(&t, &dims), dim_of(&s, &dims));
                if m.len() as u64 != rows || m.iter().any(|r| r.len() as u64 != cols) {
                    return Self::sort_err(mat_at, format!("map `{arrow}` must be {rows}x{cols}"));
                }
                maps.push((arrow, m));
            }
            self.sym("}")?;
            (a, ModuleBody::Explicit { dims, maps })
        };
        self.syms.modules.insert(name.clone(), algebra.clone());
        Ok(ModuleDecl { name, algebra, body })
    }

    fn matrix(&mut self) -> Result<MatrixLit> {
        self.sym("[")?;
        let mut rows = Vec::new();
        if !self.is_sym("]") {
            loop {
                self.sym("[")?;
                let mut row = Vec::new();
                if !self.is_sym("]") {
                    loop {
                        row.push(self.signed_rational()?);
                        if !self.is_sym(",") {
                            break;
                        }
                        self.bump();
                    }
                }
                self.sym("]")?;
                rows.push(row);
                if !self.is_sym(",") {
                    break;
                }
                self.bump();
            }
        }
        self.sym("]")?;
        Ok(rows)
    }

    fn var_list(&mut self, a: &AlgRef, seen: &mut Vec<String>) -> Result<Vec<(String, String)>> {
        let mut out = Vec::new();
        loop {
            let (v, at) = self.ident()?;
            if seen.contains(&v) {
                return Self::sort_err(at, format!("variable `{v}` is declared twice"));
            }
            self.sym(":")?;
            let s = self.vertex_in(a)?;
            seen.push(v.clone());
            out.push((v, s));
            if !self.is_sym(",") {
                break;
            }
            self.bump();
        }
        self.sym(";")?;
        Ok(out)
    }

    fn pp(&mut self) -> Result<PpDecl> {
        self.kw("pp")?;
        let (name, at) = self.ident()?;
        self.new_name(self.syms.pps.contains_key(&name), at, "formula", &name)?;
        self.kw("over")?;
        let algebra = self.alg_ref()?;
        self.sym("{")?;
        let mut seen = Vec::new();
        let mut free = Vec::new();
        let mut bound = Vec::new();
        if self.is_kw("free") {
            self.bump();
            free = self.var_list(&algebra, &mut seen)?;
        }
        if self.is_kw("exists") {
            self.bump();
            bound = self.var_list(&algebra, &mut seen)?;
        }
        let sort_of: BTreeMap<String, String> = free.iter().chain(&bound).cloned().collect();
        let mut equations = Vec::new();
        while self.is_kw("eq") {
            self.bump();
            let sort = self.vertex_in(&algebra)?;
            self.sym(":")?;
            let mut terms = Vec::new();
            let mut sign = BigRational::one();
            if self.is_sym("-") {
                self.bump();
                sign = -sign;
            }
            loop {
                let c = if matches!(self.peek(), Tok::Int(_)) {
                    let c = self.rational()?;
                    self.sym("*")?;
                    c
                } else {
                    BigRational::one()
                };
                let has_path = self.is_kw("id") || matches!(self.peek2(), Tok::Sym("*") | Tok::Sym("."));
                let path = if has_path {
                    let p = self.path(&algebra)?;
                    self.sym("*")?;
                    Some(p)
                } else {
                    None
                };
                let (var, vat) = self.ident()?;
                let Some(vs) = sort_of.get(&var) else {
                    return Self::unresolved(vat, &var);
                };
                let (src, tgt, pat) = match &path {
                    Some((_, s, t, p)) => (s.clone(), t.clone(), *p),
                    None => (sort.clone(), sort.clone(), vat),
                };
                if *vs != src {
                    return Self::sort_err(pat, format!("`{var}` has sort `{vs}` but the coefficient expects `{src}`"));
                }
                if tgt != sort {
                    return Self::sort_err(pat, format!("term lands in sort `{tgt}`, equation is in sort `{sort}`"));
                }
                terms.push((&sign * &c, path.map(|p| p.0), var));
                if self.is_sym("+") {
                    sign = BigRational::one();
                } else if self.is_sym("-") {
                    sign = -BigRational::one();
                } else {
                    break;
                }
                self.bump();
            }
            self.sym("=")?;
            match self.peek() {
                Tok::Int(s) if s.chars().all(|c| c == '0') => {
                    self.bump();
                }
                _ => return self.fail("`0`"),
            }
            self.sym(";")?;
            equations.push(EqDecl { sort, terms });
        }
        self.sym("}")?;
        let sorts = free.iter().map(|v| v.1.clone()).collect();
        self.syms.pps.insert(name.clone(), (algebra.clone(), sorts));
        Ok(PpDecl { name, algebra, free, bound, equations })
    }

    fn formula_ref(&mut self, a: &AlgRef) -> Result<(String, Vec<String>, Pos)> {
        let (n, at) = self.ident()?;
        match self.syms.pps.get(&n) {
            None => Self::unresolved(at, &n),
            Some((b, _)) if b != a => Self::sort_err(at, format!("`{n}` is over {}, not {}", alg_display(b), alg_display(a))),
            Some((_, s)) => Ok((n, s.clone(), at)),
        }
    }

    fn fixture_ref(&mut self, a: &AlgRef) -> Result<String> {
        let (n, at) = self.ident()?;
        match self.syms.fixtures.get(&n) {
            None => Self::unresolved(at, &n),
            Some(b) if b != a => Self::sort_err(at, format!("fixture `{n}` is over {}, not {}", alg_display(b), alg_display(a))),
            Some(_) => Ok(n),
        }
    }

    fn pair(&mut self) -> Result<PairDecl> {
        self.kw("pair")?;
        let (name, at) = self.ident()?;
        self.new_name(self.syms.pairs.contains_key(&name), at, "pair", &name)?;
        self.kw("over")?;
        let algebra = self.alg_ref()?;
        self.sym("=")?;
        let (top, ts, _) = self.formula_ref(&algebra)?;
        self.sym("/")?;
        let (bottom, bs, bat) = self.formula_ref(&algebra)?;
        if ts != bs {
            return Self::sort_err(bat, format!("`{bottom}` has free sorts {bs:?}, `{top}` has {ts:?}"));
        }
        let mut testset = None;
        if self.is_kw("testset") {
            self.bump();
            testset = Some(self.fixture_ref(&algebra)?);
        }
        self.sym(";")?;
        self.syms.pairs.insert(name.clone(), (algebra.clone(), ts));
        Ok(PairDecl { name, algebra, top, bottom, testset })
    }

    fn interp(&mut self) -> Result<InterpDecl> {
        self.kw("interp")?;
        let (name, at) = self.ident()?;
        self.new_name(self.syms.interps.contains_key(&name), at, "interpretation", &name)?;
        self.kw("from")?;
        let source = self.alg_ref()?;
        self.kw("to")?;
        let target = self.alg_ref()?;
        self.sym("{")?;
        let mut sorts: Vec<(String, String)> = Vec::new();
        let mut sort_sorts: BTreeMap<String, Vec<String>> = BTreeMap::new();
        while self.is_kw("sort") {
            self.bump();
            let vat = self.here();
            let v = self.vertex_in(&target)?;
            if sort_sorts.contains_key(&v) {
                return Self::sort_err(vat, format!("sort for `{v}` given twice"));
            }
            self.sym("=")?;
            let (p, pat) = self.ident()?;
            match self.syms.pairs.get(&p) {
                None => return Self::unresolved(pat, &p),
                Some((a, _)) if *a != source => {
                    return Self::sort_err(pat, format!("pair `{p}` is over {}, not {}", alg_display(a), alg_display(&source)))
                }
                Some((_, s)) => sort_sorts.insert(v.clone(), s.clone()),
            };
            self.sym(";")?;
            sorts.push((v, p));
        }
        let mut arrows: Vec<(String, String)> = Vec::new();
        while self.is_kw("arrow") {
            self.bump();
            let (a, aat) = self.ident()?;
            let Some((s, t)) = self.quiver_of(&target).arrow(&a, target.op) else {
                return Self::unresolved(aat, &a);
            };
            if arrows.iter().any(|x| x.0 == a) {
                return Self::sort_err(aat, format!("map for `{a}` given twice"));
            }
            let (Some(ss), Some(ts)) = (sort_sorts.get(&s), sort_sorts.get(&t)) else {
                return Self::sort_err(aat, format!("arrow `{a}` needs sorts for `{s}` and `{t}` first"));
            };
            let mut expected = ss.clone();
            expected.extend(ts.iter().cloned());
            self.sym("=")?;
            let (f, fs, fat) = self.formula_ref(&source)?;
            if fs != expected {
                return Self::sort_err(fat, format!("`{f}` has free sorts {fs:?}, expected {expected:?}"));
            }
            self.sym(";")?;
            arrows.push((a, f));
        }
        let mut mode = None;
        if self.is_kw("mode") {
            self.bump();
            if self.is_kw("exact") {
                self.bump();
                mode = Some(ModeDecl::Exact);
            } else if self.is_kw("testset") {
                self.bump();
                mode = Some(ModeDecl::TestSet(self.fixture_ref(&source)?));
            } else {
                return self.fail("`exact` or `testset`");
            }
            self.sym(";")?;
        }
        let close = self.here();
        self.sym("}")?;
        let q = self.quiver_of(&target);
        if let Some(v) = q.vertices.iter().find(|v| !sort_sorts.contains_key(*v)) {
            return Self::sort_err(close, format!("no sort given for vertex `{v}`"));
        }
        if let Some(a) = q.arrows.iter().find(|a| !arrows.iter().any(|x| x.0 == a.0)) {
            return Self::sort_err(close, format!("no map given for arrow `{}`", a.0));
        }
        self.syms.interps.insert(name.clone(), (source.clone(), target.clone()));
        Ok(InterpDecl { name, source, target, sorts, arrows, mode })
    }

    fn fixture(&mut self) -> Result<FixtureDecl> {
        self.kw("fixture")?;
        let (name, at) = self.ident()?;
        self.new_name(self.syms.fixtures.contains_key(&name), at, "fixture", &name)?;
        self.sym("=")?;
        let (body, alg) = if self.is_sym("{") {
            self.bump();
            let (first, a) = self.module_ref()?;
            let mut list = vec![first];
            while self.is_sym(",") {
                self.bump();
                let pat = self.here();
                let (m, b) = self.module_ref()?;
                if b != a {
                    return Self::sort_err(pat, format!("`{m}` is over {}, not {}", alg_display(&b), alg_display(&a)));
                }
                list.push(m);
            }
            self.sym("}")?;
            (FixtureBody::List(list), a)
        } else if self.is_kw("jordan") {
            self.bump();
            self.sym("(")?;
            let aat = self.here();
            let a = self.alg_ref()?;
            let q = self.quiver_of(&a);
            if q.vertices.len() != 1 || q.arrows.len() != 1 {
                return Self::sort_err(aat, "jordan fixtures need one vertex and one loop".into());
            }
            self.sym(",")?;
            let (k, _) = self.uint()?;
            self.sym(")")?;
            (FixtureBody::Jordan { algebra: a.clone(), max_dim: k }, a)
        } else if self.is_kw("image") {
            self.bump();
            self.sym("(")?;
            let (i, iat) = self.ident()?;
            let Some((src, tgt)) = self.syms.interps.get(&i).cloned() else {
                return Self::unresolved(iat, &i);
            };
            self.sym(",")?;
            let f = self.fixture_ref(&src)?;
            self.sym(")")?;
            (FixtureBody::Image { interp: i, fixture: f }, tgt)
        } else {
            return self.fail("`{`, `jordan` or `image`");
        };
        self.sym(";")?;
        self.syms.fixtures.insert(name.clone(), alg);
        Ok(FixtureDecl { name, body })
    }

    fn auslander(&mut self) -> Result<AuslanderDecl> {
        self.kw("auslander")?;
        let (name, at) = self.ident()?;
        self.new_name(self.syms.auslanders.contains_key(&name), at, "auslander algebra", &name)?;
        self.kw("over")?;
        let algebra = self.alg_ref()?;
        self.sym("=")?;
        self.sym("{")?;
        let mut modules = Vec::new();
        loop {
            let pat = self.here();
            let (m, b) = self.module_ref()?;
            if b != algebra {
                return Self::sort_err(pat, format!("`{m}` is over {}, not {}", alg_display(&b), alg_display(&algebra)));
            }
            modules.push(m);
            if !self.is_sym(",") {
                break;
            }
            self.bump();
        }
        self.sym("}")?;
        self.sym(";")?;
        self.syms.auslanders.insert(name.clone(), modules.clone());
        Ok(AuslanderDecl { name, algebra, modules })
    }

    fn smodule(&mut self) -> Result<SModuleDecl> {
        self.kw("smodule")?;
        let (name, at) = self.ident()?;
        self.new_name(self.syms.smodules.contains(&name), at, "functor", &name)?;
        self.sym("=")?;
        let kind = if self.is_kw("proj") {
            SModuleKind::Projective
        } else if self.is_kw("simple") {
            SModuleKind::Simple
        } else {
            return self.fail("`proj` or `simple`");
        };
        self.bump();
        self.sym("(")?;
        let (aus, aat) = self.ident()?;
        let Some(list) = self.syms.auslanders.get(&aus).cloned() else {
            return Self::unresolved(aat, &aus);
        };
        self.sym(",")?;
        let (summand, sat) = self.ident()?;
        if !list.contains(&summand) {
            return Self::unresolved(sat, &summand);
        }
        self.sym(")")?;
        self.sym(";")?;
        self.syms.smodules.insert(name.clone());
        Ok(SModuleDecl { name, auslander: aus, kind, summand })
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}
