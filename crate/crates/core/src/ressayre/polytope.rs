use super::generate::GenerationStats;
use super::{Classification, Mode, PairRecord};
use crate::admissible::GroupSetup;
use crate::exact::{self, Rational};
use crate::roots::{Coweight, FactorKind, RootDatum, Weight, WeylElement};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;

pub const SCHEMA: &str = "momentope-polytope/1";

/// `⟨ξ̃, w̃γ⟩ + ⟨ξ, γ⟩ ≥ 0` with coprime integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    /// `w_i γ` for each copy, scaled by the common normalization.
    pub xi_tilde: Vec<Vec<BigInt>>,
    /// `γ`, scaled likewise.
    pub xi: Vec<BigInt>,
    pub source: PairRecord,
    /// Other pairs producing the same normalized inequality.
    pub also_from: Vec<(Coweight, Vec<WeylElement>)>,
}

fn ints(v: &Coweight) -> Vec<BigInt> {
    v.integer_coords().expect("admissible gamma has integer coordinates")
}

impl Inequality {
    pub fn from_pair(record: PairRecord) -> Self {
        let mut xi_tilde: Vec<Vec<BigInt>> = record.w.iter().map(|w| ints(&w.apply(&record.gamma))).collect();
        let mut xi = ints(&record.gamma);
        let g = exact::gcd_all(xi_tilde.iter().flatten().chain(&xi));
        if !g.is_zero() && !g.is_one() {
            for x in xi_tilde.iter_mut().flatten().chain(xi.iter_mut()) {
                *x /= &g;
            }
        }
        Inequality { xi_tilde, xi, source: record, also_from: Vec::new() }
    }

    pub fn key(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        (self.xi_tilde.clone(), self.xi.clone())
    }

    pub fn value(&self, point: &Point) -> Rational {
        let mut v = Rational::zero();
        for (c, x) in self.xi_tilde.iter().zip(&point.xi_tilde) {
            for (a, b) in c.iter().zip(x) {
                v += Rational::from_integer(a.clone()) * b;
            }
        }
        for (a, b) in self.xi.iter().zip(&point.xi) {
            v += Rational::from_integer(a.clone()) * b;
        }
        v
    }

    /// Coefficients as floats, copies first, then `ξ`.
    pub fn coeffs_f64(&self) -> Vec<Vec<f64>> {
        self.xi_tilde
            .iter()
            .chain(std::iter::once(&self.xi))
            .map(|c| c.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }

    pub fn render(&self) -> String {
        let s = self.xi_tilde.len();
        let terms: Vec<(BigInt, String)> = self
            .xi_tilde
            .iter()
            .chain(std::iter::once(&self.xi))
            .enumerate()
            .flat_map(|(k, c)| c.iter().enumerate().map(move |(j, a)| (a.clone(), variable(k, j, s))))
            .collect();
        render_terms(&terms, ">= 0")
    }
}

fn variable(k: usize, j: usize, copies: usize) -> String {
    if k < copies {
        format!("xt{}[{}]", k + 1, j + 1)
    } else {
        format!("xi[{}]", j + 1)
    }
}

fn render_terms(terms: &[(BigInt, String)], tail: &str) -> String {
    let mut out = String::new();
    for (a, name) in terms.iter().filter(|(a, _)| !a.is_zero()) {
        let mag = a.abs();
        if out.is_empty() {
            if a.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if a.is_negative() { " - " } else { " + " });
        }
        if !mag.is_one() {
            let _ = write!(out, "{mag}*");
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    format!("{out} {tail}")
}

/// A homogeneous linear constraint on one factor: `Σ coeffs·x ≥ 0` or `= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    /// `0..s` for the copies of `K̃`, `s` for `K`.
    pub factor: usize,
    pub coeffs: Vec<i64>,
}

impl LinearConstraint {
    fn value(&self, point: &Point) -> Rational {
        let x = point.factor(self.factor);
        self.coeffs.iter().zip(x).map(|(&c, v)| exact::int(c) * v).sum()
    }
}

/// Dominant coordinates `(ξ̃_1, …, ξ̃_s; ξ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub xi_tilde: Vec<Vec<Rational>>,
    pub xi: Vec<Rational>,
}

impl Point {
    fn factor(&self, k: usize) -> &[Rational] {
        self.xi_tilde.get(k).map_or(&self.xi, |v| v.as_slice())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub value: Rational,
    pub rendered: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub violated: Vec<Violation>,
    /// Inequalities with zero slack.
    pub tight: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MembershipError {
    #[error("point has {got} K~ components, expected {expected}")]
    Copies { expected: usize, got: usize },
    #[error("{factor} has {got} coordinates, expected {expected}")]
    Length { factor: String, expected: usize, got: usize },
    #[error("{factor}, block {block}: coordinates are not weakly decreasing")]
    NotDominant { factor: String, block: String },
    #[error("{factor}, block {block}: coordinates do not sum to zero")]
    Trace { factor: String, block: String },
}

pub fn factor_name(k: usize, copies: usize) -> String {
    if k < copies {
        format!("copy {} of K~", k + 1)
    } else {
        "K".to_string()
    }
}

fn factor_label(k: usize, copies: usize) -> String {
    if k < copies {
        format!("xi_tilde[{}]", k + 1)
    } else {
        "xi".to_string()
    }
}

/// The generated H-representation.
#[derive(Debug, Clone)]
pub struct PolytopeDescription {
    pub fingerprint: String,
    pub datum: RootDatum,
    pub copies: usize,
    pub v_weights: Vec<Weight>,
    pub properness: String,
    pub mode: Mode,
    pub prune_lp: bool,
    pub admissible: Vec<Coweight>,
    pub inequalities: Vec<Inequality>,
    /// Inequalities dropped by the optional LP pass.
    pub pruned: Vec<Inequality>,
    pub chamber: Vec<LinearConstraint>,
    pub trace_equalities: Vec<LinearConstraint>,
    pub stats: GenerationStats,
}

/// SHA-256 of a canonical description of the group, copies, form and `V` weights.
pub fn fingerprint(setup: &GroupSetup) -> String {
    let d = setup.datum();
    let mut s = format!("{SCHEMA};group={d};copies={};form=", setup.copies());
    for x in d.form().scales() {
        let _ = write!(s, "{x},");
    }
    s.push_str(";v=");
    for w in setup.v_weights().expanded() {
        let _ = write!(s, "{w}");
    }
    hex::encode(Sha256::digest(s.as_bytes()))
}

pub(crate) fn chamber_constraints(datum: &RootDatum, copies: usize) -> (Vec<LinearConstraint>, Vec<LinearConstraint>) {
    let n = datum.ambient_dim();
    let mut chamber = Vec::new();
    let mut trace = Vec::new();
    for k in 0..=copies {
        for &i in datum.simple_positions() {
            let mut c = vec![0; n];
            c[i] = 1;
            c[i + 1] = -1;
            chamber.push(LinearConstraint { factor: k, coeffs: c });
        }
        for f in datum.factors().iter().filter(|f| f.kind == FactorKind::Su) {
            let mut c = vec![0; n];
            for x in &mut c[f.range()] {
                *x = 1;
            }
            trace.push(LinearConstraint { factor: k, coeffs: c });
        }
    }
    (chamber, trace)
}

impl PolytopeDescription {
    pub fn check_membership(&self, point: &Point) -> Result<Membership, MembershipError> {
        let n = self.datum.ambient_dim();
        if point.xi_tilde.len() != self.copies {
            return Err(MembershipError::Copies { expected: self.copies, got: point.xi_tilde.len() });
        }
        for k in 0..=self.copies {
            let x = point.factor(k);
            let factor = factor_name(k, self.copies);
            if x.len() != n {
                return Err(MembershipError::Length { factor, expected: n, got: x.len() });
            }
            for f in self.datum.factors() {
                let block = f.to_string();
                let vals = &x[f.range()];
                if f.has_roots() && vals.windows(2).any(|w| w[0] < w[1]) {
                    return Err(MembershipError::NotDominant { factor, block });
                }
                if f.kind == FactorKind::Su && !vals.iter().sum::<Rational>().is_zero() {
                    return Err(MembershipError::Trace { factor, block });
                }
            }
        }
        debug_assert!(self.chamber.iter().all(|c| !c.value(point).is_negative()));
        debug_assert!(self.trace_equalities.iter().all(|c| c.value(point).is_zero()));
        let mut violated = Vec::new();
        let mut tight = Vec::new();
        for (i, ineq) in self.inequalities.iter().enumerate() {
            let v = ineq.value(point);
            if v.is_negative() {
                violated.push(Violation { index: i, value: v, rendered: ineq.render() });
            } else if v.is_zero() {
                tight.push(i);
            }
        }
        Ok(Membership { member: violated.is_empty(), violated, tight })
    }

    /// Minimum inequality value at a floating-point point (copies first, then `ξ`).
    pub fn min_value_f64(&self, factors: &[Vec<f64>]) -> f64 {
        self.inequalities
            .iter()
            .map(|q| eval_f64(&q.coeffs_f64(), factors))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn to_json(&self) -> String {
        let file = PolytopeFile::from(self);
        let mut s = serde_json::to_string_pretty(&file).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, PolytopeParseError> {
        let file: PolytopeFile = serde_json::from_str(text).map_err(|e| PolytopeParseError(e.to_string()))?;
        file.into_description()
    }
}

pub fn eval_f64(coeffs: &[Vec<f64>], factors: &[Vec<f64>]) -> f64 {
    coeffs
        .iter()
        .zip(factors)
        .map(|(c, x)| c.iter().zip(x).map(|(a, b)| a * b).sum::<f64>())
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed polytope file: {0}")]
pub struct PolytopeParseError(pub String);

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct PolytopeFile {
    schema: String,
    fingerprint: String,
    setup: SetupJson,
    mode: String,
    admissible: Vec<Vec<String>>,
    chamber: Vec<ConstraintJson>,
    trace_equalities: Vec<ConstraintJson>,
    inequalities: Vec<InequalityJson>,
    pruned: Vec<InequalityJson>,
    stats: GenerationStats,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct SetupJson {
    group: String,
    copies: usize,
    form: Vec<u64>,
    v_weights: Vec<Vec<String>>,
    properness: String,
    prune_lp: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintJson {
    factor: String,
    coeffs: Vec<i64>,
    rendered: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InequalityJson {
    gamma: Vec<String>,
    w: Vec<Vec<usize>>,
    coeffs: CoeffsJson,
    certificates: CertificatesJson,
    rendered: String,
    #[serde(rename = "alsoFrom")]
    also_from: Vec<SourceJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffsJson {
    xi_tilde: Vec<Vec<String>>,
    xi: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificatesJson {
    #[serde(rename = "dimA")]
    dim_a: [u64; 3],
    #[serde(rename = "traceLHS")]
    trace_lhs: String,
    #[serde(rename = "traceRHS")]
    trace_rhs: String,
    #[serde(rename = "schubertN")]
    schubert_n: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SourceJson {
    gamma: Vec<String>,
    w: Vec<Vec<usize>>,
}

fn strs<T: ToString>(v: impl IntoIterator<Item = T>) -> Vec<String> {
    v.into_iter().map(|x| x.to_string()).collect()
}

fn perms(w: &[WeylElement]) -> Vec<Vec<usize>> {
    w.iter().map(WeylElement::one_line).collect()
}

impl From<&Inequality> for InequalityJson {
    fn from(q: &Inequality) -> Self {
        let s = &q.source;
        InequalityJson {
            gamma: strs(s.gamma.coords()),
            w: perms(&s.w),
            coeffs: CoeffsJson { xi_tilde: q.xi_tilde.iter().map(strs).collect(), xi: strs(&q.xi) },
            certificates: CertificatesJson {
                dim_a: s.dim_a,
                trace_lhs: s.trace_lhs.to_string(),
                trace_rhs: s.trace_rhs.to_string(),
                schubert_n: s.schubert_n.to_i64().expect("Schubert number fits in i64"),
            },
            rendered: q.render(),
            also_from: q
                .also_from
                .iter()
                .map(|(g, w)| SourceJson { gamma: strs(g.coords()), w: perms(w) })
                .collect(),
        }
    }
}

fn constraint_json(c: &LinearConstraint, copies: usize, equality: bool) -> ConstraintJson {
    let label = factor_label(c.factor, copies);
    let terms: Vec<(BigInt, String)> =
        c.coeffs.iter().enumerate().map(|(j, &a)| (BigInt::from(a), variable(c.factor, j, copies))).collect();
    ConstraintJson {
        factor: label,
        coeffs: c.coeffs.clone(),
        rendered: render_terms(&terms, if equality { "= 0" } else { ">= 0" }),
    }
}

impl From<&PolytopeDescription> for PolytopeFile {
    fn from(p: &PolytopeDescription) -> Self {
        PolytopeFile {
            schema: SCHEMA.to_string(),
            fingerprint: p.fingerprint.clone(),
            setup: SetupJson {
                group: p.datum.to_string(),
                copies: p.copies,
                form: p.datum.form().scales().to_vec(),
                v_weights: p.v_weights.iter().map(|w| strs(w.coords())).collect(),
                properness: p.properness.clone(),
                prune_lp: p.prune_lp,
            },
            mode: p.mode.to_string(),
            admissible: p.admissible.iter().map(|g| strs(g.coords())).collect(),
            chamber: p.chamber.iter().map(|c| constraint_json(c, p.copies, false)).collect(),
            trace_equalities: p.trace_equalities.iter().map(|c| constraint_json(c, p.copies, true)).collect(),
            inequalities: p.inequalities.iter().map(InequalityJson::from).collect(),
            pruned: p.pruned.iter().map(InequalityJson::from).collect(),
            stats: p.stats.clone(),
        }
    }
}

fn err(msg: impl Into<String>) -> PolytopeParseError {
    PolytopeParseError(msg.into())
}

fn rationals(v: &[String]) -> Result<Vec<Rational>, PolytopeParseError> {
    v.iter().map(|s| exact::parse_rational(s).map_err(|e| err(e.to_string()))).collect()
}

fn integers(v: &[String]) -> Result<Vec<BigInt>, PolytopeParseError> {
    rationals(v)?
        .into_iter()
        .map(|r| r.is_integer().then(|| r.to_integer()).ok_or_else(|| err("coefficient is not an integer")))
        .collect()
}

fn weyl(datum: &RootDatum, w: &[Vec<usize>]) -> Result<Vec<WeylElement>, PolytopeParseError> {
    w.iter()
        .map(|p| {
            WeylElement::from_one_line(p)
                .filter(|x| datum.check_weyl(x))
                .ok_or_else(|| err(format!("{p:?} is not a Weyl group element")))
        })
        .collect()
}

impl InequalityJson {
    fn into_inequality(self, datum: &RootDatum, copies: usize) -> Result<Inequality, PolytopeParseError> {
        let n = datum.ambient_dim();
        let xi_tilde: Vec<Vec<BigInt>> = self.coeffs.xi_tilde.iter().map(|v| integers(v)).collect::<Result<_, _>>()?;
        let xi = integers(&self.coeffs.xi)?;
        if xi_tilde.len() != copies || xi.len() != n || xi_tilde.iter().any(|v| v.len() != n) {
            return Err(err("coefficient vector has the wrong shape"));
        }
        let gamma = Coweight::new(rationals(&self.gamma)?);
        let w = weyl(datum, &self.w)?;
        let c = &self.certificates;
        let n_schubert = BigInt::from(c.schubert_n);
        let classification = match c.schubert_n {
            1 => Classification::Ressayre,
            k if k > 1 => Classification::Infinitesimal,
            _ => Classification::Fails,
        };
        let source = PairRecord {
            gamma,
            w,
            dim_a: c.dim_a,
            trace_lhs: exact::parse_rational(&c.trace_lhs).map_err(|e| err(e.to_string()))?,
            trace_rhs: exact::parse_rational(&c.trace_rhs).map_err(|e| err(e.to_string()))?,
            schubert_n: n_schubert,
            classification,
        };
        let also_from = self
            .also_from
            .iter()
            .map(|s| Ok((Coweight::new(rationals(&s.gamma)?), weyl(datum, &s.w)?)))
            .collect::<Result<_, PolytopeParseError>>()?;
        Ok(Inequality { xi_tilde, xi, source, also_from })
    }
}

impl PolytopeFile {
    fn into_description(self) -> Result<PolytopeDescription, PolytopeParseError> {
        if self.schema != SCHEMA {
            return Err(err(format!("unsupported schema {:?}", self.schema)));
        }
        let datum = RootDatum::parse(&self.setup.group)
            .and_then(|d| d.with_form(&self.setup.form))
            .map_err(|e| err(e.to_string()))?;
        let copies = self.setup.copies;
        let mode: Mode = self.mode.parse().map_err(err)?;
        let (chamber, trace_equalities) = chamber_constraints(&datum, copies);
        let inequalities = self
            .inequalities
            .into_iter()
            .map(|q| q.into_inequality(&datum, copies))
            .collect::<Result<_, _>>()?;
        let pruned = self.pruned.into_iter().map(|q| q.into_inequality(&datum, copies)).collect::<Result<_, _>>()?;
        Ok(PolytopeDescription {
            fingerprint: self.fingerprint,
            v_weights: self.setup.v_weights.iter().map(|w| rationals(w).map(Weight::new)).collect::<Result<_, _>>()?,
            properness: self.setup.properness,
            prune_lp: self.setup.prune_lp,
            admissible: self.admissible.iter().map(|g| rationals(g).map(Coweight::new)).collect::<Result<_, _>>()?,
            datum,
            copies,
            mode,
            inequalities,
            pruned,
            chamber,
            trace_equalities,
            stats: self.stats,
        })
    }
}

impl Point {
    pub fn from_ints(xi_tilde: &[&[i64]], xi: &[i64]) -> Self {
        Point {
            xi_tilde: xi_tilde.iter().map(|v| v.iter().map(|&x| exact::int(x)).collect()).collect(),
            xi: xi.iter().map(|&x| exact::int(x)).collect(),
        }
    }
}
