//! Line-oriented spec files.
//!
//! ```text
//! # comment
//! name = solvable-plane
//!
//! [algebra]
//! labels = X1 X2 X3
//! X1,X3 -> 1 X2
//! X2,X3 -> -1 X2
//!
//! [delta]
//! X3 : X1,X2 -> 1
//!
//! [subalgebra]
//! X1
//!
//! [coordinate_model]
//! vars = x y
//! bracket x,y = x - 1
//! constraint = x^2 + y^2 - 1
//! sampler = unconstrained
//! base = 1 0
//! poisson_lie = false
//! mult_vars = X Y
//! mult x = x X - y Y
//! field name = y ; -x
//! ```
//!
//! An `[rmatrix]` section (`J1,J2 -> eta`) may replace `[delta]`. Labels and
//! variables are identifiers. Coefficients are integers, `p/q` or finite
//! decimals and may use the symbol `eta`, which is bound at parse time; a
//! coefficient must be separated from the label it multiplies by a space.
//! Bracket pairs left out are zero; listing `(i,j)` and `(j,i)` is allowed only
//! when the two entries agree.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use bialgebra::{BialgebraError, LieBialgebra};
use coord_poisson::{CoordError, PolyVectorField, Polynomial, PolynomialPoissonModel, VarietySampler};
use exterior_algebra::{CocommutatorMap, ExteriorElement, Space};
use homspace_analysis::{HomogeneousSpaceSpec, HomspaceError};
use lie_core::{parse_scalar, LieAlgebra, Scalar, Vector};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecErrorKind {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("not a rational literal: `{0}`")]
    BadLiteral(String),
    #[error("conflicting entries for the pair ({0}, {1})")]
    AsymmetryConflict(String, String),
    #[error("{0}")]
    Syntax(String),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub kind: SpecErrorKind,
}

/// Errors from turning a parsed document into analysis objects.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BuildError {
    #[error("missing section [{0}]")]
    Missing(&'static str),
    #[error(transparent)]
    Bialgebra(#[from] BialgebraError),
    #[error(transparent)]
    Homspace(#[from] HomspaceError),
    #[error(transparent)]
    Coord(#[from] CoordError),
    #[error(transparent)]
    Exterior(#[from] exterior_algebra::ExteriorError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraBlock {
    pub labels: Vec<String>,
    /// `[X_i, X_j]` for `i < j`, nonzero entries only.
    pub brackets: BTreeMap<(usize, usize), Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CobracketBlock {
    /// Coefficients of `X_i ∧ X_j`, `i < j`.
    RMatrix(BTreeMap<(usize, usize), Scalar>),
    /// Coefficient of `X_i ∧ X_j` in `δ(X_k)`, keyed by `(k, (i, j))` with `i < j`.
    Delta(BTreeMap<(usize, (usize, usize)), Scalar>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateBlock {
    pub vars: Vec<String>,
    pub brackets: BTreeMap<(usize, usize), Polynomial>,
    pub constraints: Vec<Polynomial>,
    pub sampler: Option<VarietySampler>,
    pub base_point: Option<Vec<Scalar>>,
    pub poisson_lie: bool,
    pub mult_vars: Vec<String>,
    pub mult: BTreeMap<usize, Polynomial>,
    pub fields: Vec<(String, Vec<Polynomial>)>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpecDocument {
    pub name: String,
    pub algebra: Option<AlgebraBlock>,
    pub cobracket: Option<CobracketBlock>,
    pub subalgebra: Option<Vec<Vec<Scalar>>>,
    pub coordinate_model: Option<CoordinateBlock>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Top,
    Algebra,
    RMatrix,
    Delta,
    Subalgebra,
    Coordinate,
}

struct Ctx<'a> {
    line: usize,
    text: &'a str,
    params: HashMap<String, Scalar>,
}

impl Ctx<'_> {
    fn err(&self, sub: &str, kind: SpecErrorKind) -> SpecError {
        let column = self.text.find(sub).map(|c| self.text[..c].chars().count() + 1).unwrap_or(1);
        SpecError { line: self.line, column, kind }
    }

    fn syntax(&self, sub: &str, msg: &str) -> SpecError {
        self.err(sub, SpecErrorKind::Syntax(msg.into()))
    }

    /// Rejects number-like tokens that are not rationals and identifiers that
    /// are neither known names nor parameters.
    fn scan(&self, expr: &str, names: &[String]) -> Result<(), SpecError> {
        let chars: Vec<char> = expr.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_ascii_digit() || c == '.' {
                let start = i;
                while i < chars.len() {
                    let c = chars[i];
                    let exponent_sign = (c == '+' || c == '-')
                        && matches!(chars[i - 1], 'e' | 'E')
                        && chars.get(i + 1).is_some_and(char::is_ascii_digit);
                    if !(c.is_alphanumeric() || c == '.' || c == '_' || exponent_sign) {
                        break;
                    }
                    i += 1;
                }
                let tok: String = chars[start..i].iter().collect();
                if parse_scalar(&tok).is_err() {
                    return Err(self.err(&tok, SpecErrorKind::BadLiteral(tok.clone())));
                }
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let tok: String = chars[start..i].iter().collect();
                if !names.contains(&tok) && !self.params.contains_key(&tok) {
                    return Err(self.err(&tok, SpecErrorKind::UnknownLabel(tok.clone())));
                }
            } else {
                i += 1;
            }
        }
        Ok(())
    }

    fn polynomial(&self, expr: &str, names: &[String]) -> Result<Polynomial, SpecError> {
        self.scan(expr, names)?;
        Polynomial::parse(expr, names, &self.params).map_err(|e| self.syntax(expr, &e.to_string()))
    }

    fn constant(&self, expr: &str) -> Result<Scalar, SpecError> {
        let p = self.polynomial(expr, &[])?;
        p.as_constant().ok_or_else(|| self.syntax(expr, "expected a constant"))
    }

    /// A homogeneous linear combination of labels.
    fn linear(&self, expr: &str, labels: &[String]) -> Result<Vec<Scalar>, SpecError> {
        let p = self.polynomial(expr, labels)?;
        if p.degree() > 1 || !p.constant_term().is_zero() {
            return Err(self.syntax(expr, "expected a linear combination of labels"));
        }
        Ok((0..labels.len()).map(|i| p.derivative(i).constant_term()).collect())
    }

    fn label(&self, tok: &str, labels: &[String]) -> Result<usize, SpecError> {
        let t = tok.trim();
        labels.iter().position(|l| l == t).ok_or_else(|| self.err(t, SpecErrorKind::UnknownLabel(t.into())))
    }

    fn pair(&self, text: &str, labels: &[String]) -> Result<(usize, usize), SpecError> {
        let (a, b) = text.split_once(',').ok_or_else(|| self.syntax(text, "expected a pair `A,B`"))?;
        Ok((self.label(a, labels)?, self.label(b, labels)?))
    }

    fn identifiers(&self, text: &str) -> Result<Vec<String>, SpecError> {
        let names: Vec<String> = text.split_whitespace().map(String::from).collect();
        for n in &names {
            let ok = n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !ok || n == "eta" {
                return Err(self.syntax(n, "names must be identifiers other than `eta`"));
            }
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(self.syntax(n, "duplicate name"));
            }
        }
        Ok(names)
    }
}

fn key_value(text: &str) -> Option<(&str, &str)> {
    text.split_once('=').map(|(k, v)| (k.trim(), v.trim()))
}

/// Inserts an antisymmetric entry keyed by the sorted pair.
fn insert_pair<T: Clone + PartialEq>(
    map: &mut BTreeMap<(usize, usize), T>,
    (i, j): (usize, usize),
    value: T,
    negate: impl Fn(&T) -> T,
    conflict: impl Fn() -> SpecError,
    diagonal_zero: bool,
) -> Result<(), SpecError> {
    if i == j {
        return if diagonal_zero { Ok(()) } else { Err(conflict()) };
    }
    let (key, v) = if i < j { ((i, j), value) } else { ((j, i), negate(&value)) };
    match map.get(&key) {
        Some(prev) if *prev != v => Err(conflict()),
        Some(_) => Ok(()),
        None => {
            map.insert(key, v);
            Ok(())
        }
    }
}

/// Parses a document, binding `eta` to the given value.
pub fn parse_spec(text: &str, eta: &Scalar) -> Result<SpecDocument, SpecError> {
    let mut doc = SpecDocument::default();
    let mut section = Section::Top;
    let params = HashMap::from([("eta".to_string(), eta.clone())]);
    for (lineno, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let line = content.trim();
        if line.is_empty() {
            continue;
        }
        let ctx = Ctx { line: lineno + 1, text: raw, params: params.clone() };
        if line.starts_with('[') {
            let name = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')).ok_or_else(|| ctx.syntax(line, "bad section header"))?;
            section = match name.trim() {
                "algebra" => Section::Algebra,
                "rmatrix" => Section::RMatrix,
                "delta" => Section::Delta,
                "subalgebra" => Section::Subalgebra,
                "coordinate_model" => Section::Coordinate,
                other => return Err(ctx.syntax(other, "unknown section")),
            };
            let dup = match section {
                Section::Algebra => doc.algebra.is_some(),
                Section::RMatrix | Section::Delta => doc.cobracket.is_some(),
                Section::Subalgebra => doc.subalgebra.is_some(),
                Section::Coordinate => doc.coordinate_model.is_some(),
                Section::Top => false,
            };
            if dup {
                return Err(ctx.syntax(line, "section given twice"));
            }
            if matches!(section, Section::RMatrix | Section::Delta | Section::Subalgebra) && doc.algebra.is_none() {
                return Err(ctx.syntax(line, "[algebra] must come first"));
            }
            match section {
                Section::RMatrix => doc.cobracket = Some(CobracketBlock::RMatrix(BTreeMap::new())),
                Section::Delta => doc.cobracket = Some(CobracketBlock::Delta(BTreeMap::new())),
                Section::Subalgebra => doc.subalgebra = Some(Vec::new()),
                _ => {}
            }
            continue;
        }
        match section {
            Section::Top => {
                let (k, v) = key_value(line).ok_or_else(|| ctx.syntax(line, "expected `name = ...`"))?;
                if k != "name" {
                    return Err(ctx.syntax(k, "unknown key"));
                }
                doc.name = v.to_string();
            }
            Section::Algebra => parse_algebra_line(&ctx, line, &mut doc)?,
            Section::RMatrix => {
                let labels = &doc.algebra.as_ref().expect("checked").labels;
                let (lhs, rhs) = line.split_once("->").ok_or_else(|| ctx.syntax(line, "expected `A,B -> c`"))?;
                let pair = ctx.pair(lhs, labels)?;
                let c = ctx.constant(rhs.trim())?;
                let Some(CobracketBlock::RMatrix(map)) = doc.cobracket.as_mut() else { unreachable!() };
                let (a, b) = (labels[pair.0].clone(), labels[pair.1].clone());
                insert_pair(map, pair, c, |x| -x.clone(), || ctx.err(lhs.trim(), SpecErrorKind::AsymmetryConflict(a.clone(), b.clone())), true)?;
            }
            Section::Delta => {
                let labels = &doc.algebra.as_ref().expect("checked").labels;
                let (k, rest) = line.split_once(':').ok_or_else(|| ctx.syntax(line, "expected `K : A,B -> c`"))?;
                let k = ctx.label(k, labels)?;
                let (lhs, rhs) = rest.split_once("->").ok_or_else(|| ctx.syntax(rest, "expected `A,B -> c`"))?;
                let pair = ctx.pair(lhs, labels)?;
                let c = ctx.constant(rhs.trim())?;
                let Some(CobracketBlock::Delta(map)) = doc.cobracket.as_mut() else { unreachable!() };
                let mut sub: BTreeMap<(usize, usize), Scalar> =
                    map.iter().filter(|((kk, _), _)| *kk == k).map(|((_, p), v)| (*p, v.clone())).collect();
                let (a, b) = (labels[pair.0].clone(), labels[pair.1].clone());
                insert_pair(&mut sub, pair, c, |x| -x.clone(), || ctx.err(lhs.trim(), SpecErrorKind::AsymmetryConflict(a.clone(), b.clone())), true)?;
                for (p, v) in sub {
                    map.insert((k, p), v);
                }
            }
            Section::Subalgebra => {
                let labels = doc.algebra.as_ref().expect("checked").labels.clone();
                let v = ctx.linear(line, &labels)?;
                doc.subalgebra.as_mut().expect("opened").push(v);
            }
            Section::Coordinate => parse_coordinate_line(&ctx, line, &mut doc)?,
        }
    }
    if let Some(a) = doc.algebra.as_mut() {
        a.brackets.retain(|_, v| v.iter().any(|c| !c.is_zero()));
    }
    match doc.cobracket.as_mut() {
        Some(CobracketBlock::RMatrix(m)) => m.retain(|_, v| !v.is_zero()),
        Some(CobracketBlock::Delta(m)) => m.retain(|_, v| !v.is_zero()),
        None => {}
    }
    if let Some(c) = doc.coordinate_model.as_mut() {
        c.brackets.retain(|_, p| !p.is_zero());
    }
    Ok(doc)
}

fn parse_algebra_line(ctx: &Ctx, line: &str, doc: &mut SpecDocument) -> Result<(), SpecError> {
    if let Some((_, v)) = key_value(line).filter(|(k, _)| *k == "labels") {
        if doc.algebra.is_some() {
            return Err(ctx.syntax(line, "labels given twice"));
        }
        let labels = ctx.identifiers(v)?;
        if labels.is_empty() {
            return Err(ctx.syntax(line, "an algebra needs at least one label"));
        }
        doc.algebra = Some(AlgebraBlock { labels, brackets: BTreeMap::new() });
        return Ok(());
    }
    let alg = doc.algebra.as_mut().ok_or_else(|| ctx.syntax(line, "`labels = ...` must come first"))?;
    let (lhs, rhs) = line.split_once("->").ok_or_else(|| ctx.syntax(line, "expected `A,B -> c C`"))?;
    let pair = ctx.pair(lhs, &alg.labels)?;
    let v = ctx.linear(rhs.trim(), &alg.labels)?;
    let (a, b) = (alg.labels[pair.0].clone(), alg.labels[pair.1].clone());
    let zero = v.iter().all(Zero::is_zero);
    if pair.0 == pair.1 && !zero {
        return Err(ctx.err(lhs.trim(), SpecErrorKind::AsymmetryConflict(a, b)));
    }
    insert_pair(
        &mut alg.brackets,
        pair,
        v,
        |x| x.iter().map(|c| -c.clone()).collect(),
        || ctx.err(lhs.trim(), SpecErrorKind::AsymmetryConflict(a.clone(), b.clone())),
        true,
    )
}

fn parse_coordinate_line(ctx: &Ctx, line: &str, doc: &mut SpecDocument) -> Result<(), SpecError> {
    if let Some(v) = line.strip_prefix("vars").and_then(|r| r.trim_start().strip_prefix('=')) {
        if doc.coordinate_model.is_some() {
            return Err(ctx.syntax(line, "vars given twice"));
        }
        let vars = ctx.identifiers(v)?;
        doc.coordinate_model = Some(CoordinateBlock {
            vars,
            brackets: BTreeMap::new(),
            constraints: Vec::new(),
            sampler: None,
            base_point: None,
            poisson_lie: false,
            mult_vars: Vec::new(),
            mult: BTreeMap::new(),
            fields: Vec::new(),
        });
        return Ok(());
    }
    let cm = doc.coordinate_model.as_mut().ok_or_else(|| ctx.syntax(line, "`vars = ...` must come first"))?;
    let (head, value) = line.split_once('=').ok_or_else(|| ctx.syntax(line, "expected `key = value`"))?;
    let mut words = head.split_whitespace();
    let key = words.next().unwrap_or("");
    let arg: Vec<&str> = words.collect();
    let value = value.trim();
    match (key, arg.as_slice()) {
        ("bracket", [pair]) => {
            let pair = ctx.pair(pair, &cm.vars)?;
            let p = ctx.polynomial(value, &cm.vars)?;
            let (a, b) = (cm.vars[pair.0].clone(), cm.vars[pair.1].clone());
            insert_pair(&mut cm.brackets, pair, p, |x| -x, || ctx.err(head.trim(), SpecErrorKind::AsymmetryConflict(a.clone(), b.clone())), false)?;
        }
        ("constraint", []) => cm.constraints.push(ctx.polynomial(value, &cm.vars)?),
        ("sampler", []) => {
            let words: Vec<&str> = value.split_whitespace().collect();
            cm.sampler = Some(match words.as_slice() {
                ["unconstrained"] => VarietySampler::Unconstrained(cm.vars.len()),
                ["sphere3"] => VarietySampler::Sphere3,
                ["special_linear", n] => {
                    VarietySampler::SpecialLinear(n.parse().map_err(|_| ctx.err(n, SpecErrorKind::BadLiteral(n.to_string())))?)
                }
                _ => return Err(ctx.syntax(value, "unknown sampler")),
            });
        }
        ("base", []) => {
            let pt = value
                .split_whitespace()
                .map(|t| parse_scalar(t).map_err(|_| ctx.err(t, SpecErrorKind::BadLiteral(t.to_string()))))
                .collect::<Result<Vec<_>, _>>()?;
            if pt.len() != cm.vars.len() {
                return Err(ctx.syntax(value, "base point has the wrong length"));
            }
            cm.base_point = Some(pt);
        }
        ("poisson_lie", []) => {
            cm.poisson_lie = match value {
                "true" => true,
                "false" => false,
                _ => return Err(ctx.syntax(value, "expected true or false")),
            };
        }
        ("mult_vars", []) => {
            let mv = ctx.identifiers(value)?;
            if mv.len() != cm.vars.len() || mv.iter().any(|v| cm.vars.contains(v)) {
                return Err(ctx.syntax(value, "need one fresh name per variable"));
            }
            cm.mult_vars = mv;
        }
        ("mult", [var]) => {
            if cm.mult_vars.is_empty() {
                return Err(ctx.syntax(line, "`mult_vars = ...` must come first"));
            }
            let k = ctx.label(var, &cm.vars)?;
            let all: Vec<String> = cm.vars.iter().chain(&cm.mult_vars).cloned().collect();
            cm.mult.insert(k, ctx.polynomial(value, &all)?);
        }
        ("field", [name]) => {
            let comps = value.split(';').map(|c| ctx.polynomial(c.trim(), &cm.vars)).collect::<Result<Vec<_>, _>>()?;
            if comps.len() != cm.vars.len() {
                return Err(ctx.syntax(value, "field needs one component per variable"));
            }
            cm.fields.push((name.to_string(), comps));
        }
        _ => return Err(ctx.syntax(head.trim(), "unknown key")),
    }
    Ok(())
}

fn render_linear(v: &[Scalar], labels: &[String]) -> String {
    let parts: Vec<String> =
        v.iter().zip(labels).filter(|(c, _)| !c.is_zero()).map(|(c, l)| format!("{c} {l}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl SpecDocument {
    /// Serializes in the same format `parse_spec` reads.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        if !self.name.is_empty() {
            let _ = writeln!(s, "name = {}", self.name);
        }
        if let Some(a) = &self.algebra {
            let _ = writeln!(s, "\n[algebra]\nlabels = {}", a.labels.join(" "));
            for ((i, j), v) in &a.brackets {
                let _ = writeln!(s, "{},{} -> {}", a.labels[*i], a.labels[*j], render_linear(v, &a.labels));
            }
            match &self.cobracket {
                Some(CobracketBlock::RMatrix(m)) => {
                    s.push_str("\n[rmatrix]\n");
                    for ((i, j), c) in m {
                        let _ = writeln!(s, "{},{} -> {c}", a.labels[*i], a.labels[*j]);
                    }
                }
                Some(CobracketBlock::Delta(m)) => {
                    s.push_str("\n[delta]\n");
                    for ((k, (i, j)), c) in m {
                        let _ = writeln!(s, "{} : {},{} -> {c}", a.labels[*k], a.labels[*i], a.labels[*j]);
                    }
                }
                None => {}
            }
            if let Some(h) = &self.subalgebra {
                s.push_str("\n[subalgebra]\n");
                for v in h {
                    let _ = writeln!(s, "{}", render_linear(v, &a.labels));
                }
            }
        }
        if let Some(c) = &self.coordinate_model {
            let _ = writeln!(s, "\n[coordinate_model]\nvars = {}", c.vars.join(" "));
            for ((i, j), p) in &c.brackets {
                let _ = writeln!(s, "bracket {},{} = {}", c.vars[*i], c.vars[*j], p.render(&c.vars));
            }
            for p in &c.constraints {
                let _ = writeln!(s, "constraint = {}", p.render(&c.vars));
            }
            match &c.sampler {
                Some(VarietySampler::Unconstrained(_)) => s.push_str("sampler = unconstrained\n"),
                Some(VarietySampler::Sphere3) => s.push_str("sampler = sphere3\n"),
                Some(VarietySampler::SpecialLinear(n)) => {
                    let _ = writeln!(s, "sampler = special_linear {n}");
                }
                None => {}
            }
            if let Some(b) = &c.base_point {
                let pts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "base = {}", pts.join(" "));
            }
            let _ = writeln!(s, "poisson_lie = {}", c.poisson_lie);
            if !c.mult_vars.is_empty() {
                let _ = writeln!(s, "mult_vars = {}", c.mult_vars.join(" "));
                let all: Vec<String> = c.vars.iter().chain(&c.mult_vars).cloned().collect();
                for (k, p) in &c.mult {
                    let _ = writeln!(s, "mult {} = {}", c.vars[*k], p.render(&all));
                }
            }
            for (name, comps) in &c.fields {
                let parts: Vec<String> = comps.iter().map(|p| p.render(&c.vars)).collect();
                let _ = writeln!(s, "field {name} = {}", parts.join(" ; "));
            }
        }
        s
    }

    pub fn lie_algebra(&self) -> Result<LieAlgebra, BuildError> {
        let a = self.algebra.as_ref().ok_or(BuildError::Missing("algebra"))?;
        let mut g = LieAlgebra::new(a.labels.clone());
        for ((i, j), v) in &a.brackets {
            g.set_bracket(*i, *j, &Vector(v.clone()));
        }
        Ok(g)
    }

    /// The bialgebra; a missing cobracket section means the zero cobracket.
    pub fn bialgebra(&self) -> Result<LieBialgebra, BuildError> {
        let g = self.lie_algebra()?;
        let m = g.dim();
        Ok(match &self.cobracket {
            None => LieBialgebra::new(g, CocommutatorMap::zero(m))?,
            Some(CobracketBlock::RMatrix(entries)) => {
                let mut r = ExteriorElement::zero(m, Space::Primal, 2);
                for ((i, j), c) in entries {
                    r = r.add(&ExteriorElement::monomial(m, Space::Primal, &[*i, *j], c.clone()))?;
                }
                LieBialgebra::from_rmatrix(g, &r)?
            }
            Some(CobracketBlock::Delta(entries)) => {
                let mut images = vec![ExteriorElement::zero(m, Space::Primal, 2); m];
                for ((k, (i, j)), c) in entries {
                    images[*k] = images[*k].add(&ExteriorElement::monomial(m, Space::Primal, &[*i, *j], c.clone()))?;
                }
                LieBialgebra::new(g, CocommutatorMap::new(m, images)?)?
            }
        })
    }

    pub fn homogeneous_space(&self) -> Result<HomogeneousSpaceSpec, BuildError> {
        let b = self.bialgebra()?;
        let h = self.subalgebra.as_ref().ok_or(BuildError::Missing("subalgebra"))?;
        Ok(HomogeneousSpaceSpec::new(self.name.clone(), b, h.iter().map(|v| Vector(v.clone())).collect())?)
    }

    pub fn coordinate_model(&self) -> Result<(PolynomialPoissonModel, Vec<(String, PolyVectorField)>), BuildError> {
        let c = self.coordinate_model.as_ref().ok_or(BuildError::Missing("coordinate_model"))?;
        let entries = c.brackets.iter().map(|(k, p)| (*k, p.clone())).collect();
        let mut model = PolynomialPoissonModel::from_upper(&self.name, c.vars.clone(), entries)?;
        if !c.constraints.is_empty() || c.sampler.is_some() {
            let sampler = c.sampler.clone().unwrap_or(VarietySampler::Unconstrained(c.vars.len()));
            model = model.with_constraints(c.constraints.clone(), sampler)?;
        }
        if !c.mult.is_empty() {
            let n = c.vars.len();
            let mult = (0..n).map(|k| c.mult.get(&k).cloned().unwrap_or_else(|| Polynomial::zero(2 * n))).collect();
            model = model.with_group_mult(mult)?;
        }
        if let Some(b) = &c.base_point {
            model = model.with_base_point(b.clone(), c.poisson_lie)?;
        }
        let fields = c.fields.iter().map(|(n, comps)| (n.clone(), PolyVectorField::new(comps.clone()))).collect();
        Ok((model, fields))
    }

    /// The same document in a reordered basis: new basis vector `p` is old `perm[p]`.
    pub fn permuted(&self, perm: &[usize]) -> SpecDocument {
        let mut out = self.clone();
        let Some(a) = &self.algebra else { return out };
        let m = a.labels.len();
        let mut inv = vec![0; m];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let move_vec = |v: &Vec<Scalar>| -> Vec<Scalar> { perm.iter().map(|&o| v[o].clone()).collect() };
        let mut brackets = BTreeMap::new();
        for ((i, j), v) in &a.brackets {
            let nv = move_vec(v);
            let (p, q) = (inv[*i], inv[*j]);
            if p < q {
                brackets.insert((p, q), nv);
            } else {
                brackets.insert((q, p), nv.iter().map(|c| -c.clone()).collect());
            }
        }
        out.algebra = Some(AlgebraBlock { labels: perm.iter().map(|&o| a.labels[o].clone()).collect(), brackets });
        let sorted = |p: usize, q: usize, c: &Scalar| if p < q { ((p, q), c.clone()) } else { ((q, p), -c.clone()) };
        out.cobracket = self.cobracket.as_ref().map(|cb| match cb {
            CobracketBlock::RMatrix(mp) => {
                CobracketBlock::RMatrix(mp.iter().map(|((i, j), c)| sorted(inv[*i], inv[*j], c)).collect())
            }
            CobracketBlock::Delta(mp) => CobracketBlock::Delta(
                mp.iter()
                    .map(|((k, (i, j)), c)| {
                        let (pair, c) = sorted(inv[*i], inv[*j], c);
                        ((inv[*k], pair), c)
                    })
                    .collect(),
            ),
        });
        out.subalgebra = self.subalgebra.as_ref().map(|h| h.iter().map(move_vec).collect());
        out
    }
}
