//! Infinite quandles of idempotents given as unions of affine lines.
//!
//! Every element is `offset + p * direction` for one integer parameter
//! `p`, or a single constant point. Products of two members stay in the
//! union by rules whose parameter map is `c + l p + r q + b p q`. Each
//! checked identity is then a polynomial of degree at most 2 in every
//! parameter, so a grid with three points per parameter decides it.

use std::fmt;
use std::sync::Arc;

use crate::coeffs::{cadd, cmul};
use crate::error::{Error, Result};
use crate::quandle::FiniteQuandle;
use crate::ring::dense;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPart {
    pub name: String,
    pub param: String,
    pub offset: Vec<i128>,
    /// `None` for a single point.
    pub direction: Option<Vec<i128>>,
}

impl FamilyPart {
    pub fn point(name: &str, offset: Vec<i128>) -> Self {
        FamilyPart {
            name: name.into(),
            param: String::new(),
            offset,
            direction: None,
        }
    }

    pub fn line(name: &str, param: &str, offset: Vec<i128>, direction: Vec<i128>) -> Self {
        FamilyPart {
            name: name.into(),
            param: param.into(),
            offset,
            direction: Some(direction),
        }
    }

    pub fn is_line(&self) -> bool {
        self.direction.is_some()
    }

    pub fn eval(&self, p: i128) -> Vec<i128> {
        match &self.direction {
            None => self.offset.clone(),
            Some(d) => self.offset.iter().zip(d).map(|(&o, &c)| cadd(o, cmul(p, c))).collect(),
        }
    }

    /// The parameter reaching `z`; 0 for a matching point.
    pub fn solve(&self, z: &[i128]) -> Option<i128> {
        let p = match &self.direction {
            None => 0,
            Some(d) => {
                let k = d.iter().position(|&c| c != 0)?;
                let diff = z[k] - self.offset[k];
                if diff % d[k] != 0 {
                    return None;
                }
                diff / d[k]
            }
        };
        (self.eval(p) == z).then_some(p)
    }

    fn describe(&self, q: &FiniteQuandle) -> String {
        let show = |v: &[i128]| {
            crate::ring::format_terms(
                v.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (c < 0, c.unsigned_abs().to_string(), q.label(i))),
            )
        };
        match &self.direction {
            None => format!("{} = {{{}}}", self.name, show(&self.offset)),
            Some(d) => format!(
                "{} = {{{} + {}*({})}}",
                self.name,
                show(&self.offset),
                self.param,
                show(d)
            ),
        }
    }
}

/// `(p, q) -> constant + left*p + right*q + both*p*q`, where `p` and `q`
/// are the parameters of the left and right factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParameterMap {
    pub constant: i128,
    pub left: i128,
    pub right: i128,
    pub both: i128,
}

impl ParameterMap {
    pub const IDENTITY: ParameterMap = ParameterMap::new(0, 1, 0, 0);
    pub const FLIP: ParameterMap = ParameterMap::new(1, -1, 0, 0);

    pub const fn new(constant: i128, left: i128, right: i128, both: i128) -> Self {
        ParameterMap {
            constant,
            left,
            right,
            both,
        }
    }

    pub fn apply(&self, p: i128, q: i128) -> i128 {
        cadd(
            cadd(self.constant, cmul(self.left, p)),
            cadd(cmul(self.right, q), cmul(self.both, cmul(p, q))),
        )
    }

    /// Invertible over the integers in `p` for every fixed `q`.
    pub fn is_unimodular_in_left(&self) -> bool {
        self.both == 0 && self.left.abs() == 1
    }
}

impl fmt::Display for ParameterMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [
            (self.constant, ""),
            (self.left, "p"),
            (self.right, "q"),
            (self.both, "p*q"),
        ];
        let parts: Vec<(bool, String, String)> = terms
            .iter()
            .filter(|(c, _)| *c != 0)
            .map(|&(c, v)| {
                let mag = c.unsigned_abs();
                let label = match (v, mag) {
                    ("", _) => mag.to_string(),
                    (v, 1) => v.to_string(),
                    (v, m) => format!("{m}*{v}"),
                };
                (c < 0, "1".to_string(), label)
            })
            .collect();
        write!(f, "{}", crate::ring::format_terms(parts))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureRule {
    pub left: usize,
    pub right: usize,
    pub result: usize,
    pub map: ParameterMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricQuandle {
    pub name: String,
    pub quandle: Arc<FiniteQuandle>,
    pub parts: Vec<FamilyPart>,
    pub rules: Vec<ClosureRule>,
}

impl ParametricQuandle {
    /// Requires exactly one rule per ordered pair of parts.
    pub fn new(
        name: &str,
        quandle: Arc<FiniteQuandle>,
        parts: Vec<FamilyPart>,
        rules: Vec<ClosureRule>,
    ) -> Result<Self> {
        let n = quandle.order();
        for part in &parts {
            let bad = part.offset.len() != n || part.direction.as_ref().is_some_and(|d| d.len() != n);
            if bad {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: part.offset.len(),
                });
            }
        }
        let k = parts.len();
        let mut seen = vec![false; k * k];
        for r in &rules {
            for idx in [r.left, r.right, r.result] {
                if idx >= k {
                    return Err(Error::IndexOutOfRange { index: idx, n: k });
                }
            }
            if std::mem::replace(&mut seen[r.left * k + r.right], true) {
                return Err(Error::HypothesisFailed(format!(
                    "two rules for parts {} and {}",
                    parts[r.left].name, parts[r.right].name
                )));
            }
        }
        if let Some(miss) = seen.iter().position(|s| !s) {
            return Err(Error::HypothesisFailed(format!(
                "no rule for parts {} and {}",
                parts[miss / k].name,
                parts[miss % k].name
            )));
        }
        Ok(ParametricQuandle {
            name: name.into(),
            quandle,
            parts,
            rules,
        })
    }

    fn rule(&self, left: usize, right: usize) -> &ClosureRule {
        self.rules
            .iter()
            .find(|r| r.left == left && r.right == right)
            .expect("rules cover every pair")
    }

    fn grid(&self, part: usize, radius: i128) -> Vec<i128> {
        if self.parts[part].is_line() {
            (-radius..=radius).collect()
        } else {
            vec![0]
        }
    }

    pub fn element(&self, part: usize, p: i128) -> Vec<i128> {
        self.parts[part].eval(p)
    }

    /// The part and parameter of `z`, if it belongs to the union.
    pub fn locate(&self, z: &[i128]) -> Option<(usize, i128)> {
        self.parts
            .iter()
            .enumerate()
            .find_map(|(k, part)| part.solve(z).map(|p| (k, p)))
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.parts.iter().map(|p| p.describe(&self.quandle)).collect();
        format!("{}: {}", self.name, parts.join(", "))
    }
}

/// How right multiplication by one part acts on another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightTranslationCheck {
    pub by: String,
    pub on: String,
    pub to: String,
    pub map: ParameterMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricCertificate {
    pub name: String,
    pub grid_radius: i128,
    pub points_checked: usize,
    pub degree_bound: u32,
    pub closure: Vec<String>,
    pub right_translations: Vec<RightTranslationCheck>,
    pub trivial: bool,
}

impl fmt::Display for ParametricCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: closure, idempotence and right distributivity hold at {} grid points (radius {}, degree at most {} per parameter)",
            self.name, self.points_checked, self.grid_radius, self.degree_bound
        )?;
        for c in &self.closure {
            writeln!(f, "  {c}")?;
        }
        for t in &self.right_translations {
            writeln!(
                f,
                "  right multiplication by {} sends {} to {} with p -> {}",
                t.by, t.on, t.to, t.map
            )?;
        }
        write!(f, "  trivial: {}", self.trivial)
    }
}

fn fail(msg: String) -> Error {
    Error::VerificationFailed(msg)
}

/// Checks closure, idempotence and right distributivity on a grid and that
/// each right multiplication is a bijection of the union.
pub fn certify_parametric_quandle(pq: &ParametricQuandle, grid_radius: i128) -> Result<ParametricCertificate> {
    if grid_radius < 1 {
        return Err(Error::Unsupported(
            "the grid needs at least three points per parameter".into(),
        ));
    }
    let q = &*pq.quandle;
    let k = pq.parts.len();
    let mut points = 0usize;
    let prod = |a: usize, p: i128, b: usize, r: i128| dense::mul(q, &pq.element(a, p), &pq.element(b, r));

    for a in 0..k {
        for p in pq.grid(a, grid_radius) {
            points += 1;
            let z = pq.element(a, p);
            if dense::mul(q, &z, &z) != z {
                return Err(fail(format!("{} at p = {p} is not idempotent", pq.parts[a].name)));
            }
        }
    }

    let mut closure = Vec::new();
    for rule in &pq.rules {
        for p in pq.grid(rule.left, grid_radius) {
            for r in pq.grid(rule.right, grid_radius) {
                points += 1;
                let want = pq.element(rule.result, rule.map.apply(p, r));
                if prod(rule.left, p, rule.right, r) != want {
                    return Err(fail(format!(
                        "{} * {} leaves {} at p = {p}, q = {r}",
                        pq.parts[rule.left].name, pq.parts[rule.right].name, pq.parts[rule.result].name
                    )));
                }
            }
        }
        closure.push(format!(
            "{} * {} lies in {} with parameter {}",
            pq.parts[rule.left].name, pq.parts[rule.right].name, pq.parts[rule.result].name, rule.map
        ));
    }

    let mut translations = Vec::new();
    for b in 0..k {
        let mut hit = vec![false; k];
        for a in 0..k {
            let rule = pq.rule(a, b);
            let (src, dst) = (&pq.parts[a], &pq.parts[rule.result]);
            let ok = src.is_line() == dst.is_line()
                && (!src.is_line() || rule.map.is_unimodular_in_left())
                && !std::mem::replace(&mut hit[rule.result], true);
            if !ok {
                return Err(fail(format!(
                    "right multiplication by {} is not a bijection on {}",
                    pq.parts[b].name, src.name
                )));
            }
            translations.push(RightTranslationCheck {
                by: pq.parts[b].name.clone(),
                on: src.name.clone(),
                to: dst.name.clone(),
                map: rule.map,
            });
        }
    }

    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for p in pq.grid(a, grid_radius) {
                    for r in pq.grid(b, grid_radius) {
                        for s in pq.grid(c, grid_radius) {
                            points += 1;
                            let (u, v, w) = (pq.element(a, p), pq.element(b, r), pq.element(c, s));
                            let lhs = dense::mul(q, &dense::mul(q, &u, &v), &w);
                            let rhs = dense::mul(q, &dense::mul(q, &u, &w), &dense::mul(q, &v, &w));
                            if lhs != rhs {
                                return Err(fail(format!(
                                    "right distributivity fails on parts ({}, {}, {}) at ({p}, {r}, {s})",
                                    pq.parts[a].name, pq.parts[b].name, pq.parts[c].name
                                )));
                            }
                        }
                    }
                }
            }
        }
    }

    let trivial = pq
        .rules
        .iter()
        .all(|r| r.result == r.left && (!pq.parts[r.left].is_line() || r.map == ParameterMap::IDENTITY));
    Ok(ParametricCertificate {
        name: pq.name.clone(),
        grid_radius,
        points_checked: points,
        degree_bound: 2,
        closure,
        right_translations: translations,
        trivial,
    })
}

/// Right multiplication by one extra element, restricted to a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotExtendableCertificate {
    pub extra: String,
    pub extra_param: i128,
    /// The induced map on the line is `p -> constant + linear * p`.
    pub constant: i128,
    pub linear: i128,
    pub surjective: bool,
    /// A parameter value outside the image, when not surjective.
    pub missed: Option<i128>,
    /// Integer solvability condition for a preimage of `gamma`.
    pub solvability: String,
}

impl fmt::Display for NotExtendableCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {}: induced map p -> {}; preimage of gamma needs {}; surjective: {}",
            self.extra,
            self.extra_param,
            ParameterMap::new(self.constant, self.linear, 0, 0),
            self.solvability,
            self.surjective
        )?;
        if let Some(m) = self.missed {
            write!(f, "; {m} is not reached")?;
        }
        Ok(())
    }
}

/// Fits and checks the map induced on `base` by right multiplication with
/// `extra` at parameter `alpha`. A non-unit linear coefficient means the
/// union of `base` and that element cannot be a quandle.
pub fn certify_not_extendable(
    quandle: &FiniteQuandle,
    base: &FamilyPart,
    extra: &FamilyPart,
    alpha: i128,
    grid_radius: i128,
) -> Result<NotExtendableCertificate> {
    if grid_radius < 1 || !base.is_line() {
        return Err(Error::Unsupported(
            "needs a line and at least three points per parameter".into(),
        ));
    }
    let u = extra.eval(alpha);
    let image = |p: i128| {
        let w = dense::mul(quandle, &base.eval(p), &u);
        base.solve(&w)
            .ok_or_else(|| fail(format!("product at p = {p} leaves {}", base.name)))
    };
    let constant = image(0)?;
    let linear = image(1)? - constant;
    for p in -grid_radius..=grid_radius {
        if image(p)? != cadd(constant, cmul(linear, p)) {
            return Err(fail(format!("induced map is not affine at p = {p}")));
        }
    }
    let surjective = linear.abs() == 1;
    let missed = if linear == 0 {
        Some(if constant == 0 { 1 } else { 0 })
    } else {
        (0..linear.abs()).find(|g| (g - constant) % linear != 0)
    };
    let shift = match constant {
        0 => "gamma".to_string(),
        c if c < 0 => format!("gamma + {}", -c),
        c => format!("gamma - {c}"),
    };
    Ok(NotExtendableCertificate {
        extra: extra.name.clone(),
        extra_param: alpha,
        constant,
        linear,
        surjective,
        missed,
        solvability: format!("{} = ({shift}) / {linear} integral", base.param),
    })
}

fn rule(left: usize, right: usize, result: usize, map: ParameterMap) -> ClosureRule {
    ClosureRule {
        left,
        right,
        result,
        map,
    }
}

/// `M1 = {a0 + alpha(a2 - a0)}` and `M2 = {a1 + beta(a3 - a1)}` in `Z[R4]`.
pub fn r4_maximal_quandle() -> ParametricQuandle {
    let q = Arc::new(FiniteQuandle::dihedral(4).expect("R4"));
    let parts = vec![
        FamilyPart::line("M1", "alpha", vec![1, 0, 0, 0], vec![-1, 0, 1, 0]),
        FamilyPart::line("M2", "beta", vec![0, 1, 0, 0], vec![0, -1, 0, 1]),
    ];
    let rules = vec![
        rule(0, 0, 0, ParameterMap::IDENTITY),
        rule(0, 1, 0, ParameterMap::FLIP),
        rule(1, 0, 1, ParameterMap::FLIP),
        rule(1, 1, 1, ParameterMap::IDENTITY),
    ];
    ParametricQuandle::new("M", q, parts, rules).expect("valid")
}

/// `{(1 - beta)x + beta y}` in `Z[Cs4]`.
pub fn cs4_line_part() -> FamilyPart {
    FamilyPart::line("L", "beta", vec![1, 0, 0], vec![-1, 1, 0])
}

/// `{alpha x + alpha y + (1 - 2 alpha)z}` in `Z[Cs4]`.
pub fn cs4_diagonal_part() -> FamilyPart {
    FamilyPart::line("D", "alpha", vec![0, 0, 1], vec![1, 1, -2])
}

/// `{z}` together with the line through `x` and `y`.
pub fn cs4_n1() -> ParametricQuandle {
    let q = Arc::new(FiniteQuandle::cs4());
    let parts = vec![FamilyPart::point("Z", vec![0, 0, 1]), cs4_line_part()];
    let rules = vec![
        rule(0, 0, 0, ParameterMap::IDENTITY),
        rule(0, 1, 0, ParameterMap::IDENTITY),
        rule(1, 0, 1, ParameterMap::FLIP),
        rule(1, 1, 1, ParameterMap::IDENTITY),
    ];
    ParametricQuandle::new("N1", q, parts, rules).expect("valid")
}

pub fn cs4_n2() -> ParametricQuandle {
    let q = Arc::new(FiniteQuandle::cs4());
    let rules = vec![rule(0, 0, 0, ParameterMap::IDENTITY)];
    ParametricQuandle::new("N2", q, vec![cs4_diagonal_part()], rules).expect("valid")
}
