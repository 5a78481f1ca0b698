//! Non-associative identities in quandle rings and the derived algebras
//! `A^(-)` (`x o y = xy - yx`) and `A^(+)` (`x . y = (xy + yx)/2`).
//!
//! Multilinear identities are decided exactly on basis tuples. The others
//! are sampled, so only their failures are definitive.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffs::{CoefficientRing, Scalar};
use crate::error::{Error, Result};
use crate::lattice::Span;
use crate::quandle::FiniteQuandle;
use crate::ring::RingElement;

/// Largest coefficient box the power-associativity search widens to.
pub const WIDEST_BOX: i128 = 4;
/// Evaluations spent looking for a smaller counterexample.
pub const MINIMIZE_BUDGET: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivedKind {
    /// The quandle ring product itself.
    Raw,
    Minus,
    Plus,
}

impl fmt::Display for DerivedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DerivedKind::Raw => "raw",
            DerivedKind::Minus => "minus",
            DerivedKind::Plus => "plus",
        })
    }
}

impl FromStr for DerivedKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(DerivedKind::Raw),
            "minus" => Ok(DerivedKind::Minus),
            "plus" => Ok(DerivedKind::Plus),
            _ => Err(Error::Parse(format!("unknown algebra kind `{s}` (raw|minus|plus)"))),
        }
    }
}

/// `R[Q]` with one of three products.
#[derive(Debug, Clone)]
pub struct DerivedAlgebra {
    quandle: Arc<FiniteQuandle>,
    ring: CoefficientRing,
    kind: DerivedKind,
    half: Option<Scalar>,
}

impl DerivedAlgebra {
    pub fn new(quandle: &Arc<FiniteQuandle>, ring: CoefficientRing, kind: DerivedKind) -> Result<Self> {
        let half = ring.from_int(2).inverse();
        if kind == DerivedKind::Plus && half.is_none() {
            return Err(Error::TwoNotInvertible(ring));
        }
        Ok(DerivedAlgebra {
            quandle: Arc::clone(quandle),
            ring,
            kind,
            half,
        })
    }

    pub fn quandle(&self) -> &Arc<FiniteQuandle> {
        &self.quandle
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn kind(&self) -> DerivedKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.quandle.order()
    }

    pub fn basis(&self, i: usize) -> Result<RingElement> {
        RingElement::basis(&self.quandle, self.ring, i)
    }

    pub fn element(&self, v: &[i128]) -> Result<RingElement> {
        RingElement::from_ints(&self.quandle, self.ring, v)
    }

    pub fn zero(&self) -> RingElement {
        RingElement::zero(&self.quandle, self.ring)
    }

    pub fn mul(&self, u: &RingElement, v: &RingElement) -> Result<RingElement> {
        match self.kind {
            DerivedKind::Raw => u.mul(v),
            DerivedKind::Minus => u.mul(v)?.sub(&v.mul(u)?),
            DerivedKind::Plus => u.mul(v)?.add(&v.mul(u)?)?.scale(self.half.expect("checked in new")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    LeftAlternative,
    RightAlternative,
    Elastic,
    Jordan,
    Associative,
    LieJacobi,
    Anticommutative,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::LeftAlternative,
        Identity::RightAlternative,
        Identity::Elastic,
        Identity::Jordan,
        Identity::Associative,
        Identity::LieJacobi,
        Identity::Anticommutative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::LeftAlternative => "left-alternative",
            Identity::RightAlternative => "right-alternative",
            Identity::Elastic => "elastic",
            Identity::Jordan => "jordan",
            Identity::Associative => "associative",
            Identity::LieJacobi => "lie-jacobi",
            Identity::Anticommutative => "anticommutative",
        }
    }

    pub fn equation(self) -> &'static str {
        match self {
            Identity::LeftAlternative => "(a a) b = a (a b)",
            Identity::RightAlternative => "a (b b) = (a b) b",
            Identity::Elastic => "(a b) a = a (b a)",
            Identity::Jordan => "((a a) b) a = (a a) (b a)",
            Identity::Associative => "(a b) c = a (b c)",
            Identity::LieJacobi => "(a b) c + (b c) a + (c a) b = 0",
            Identity::Anticommutative => "a a = 0",
        }
    }

    /// Decided exactly on basis tuples. Anticommutativity is quadratic but
    /// its polarisation `aa = 0, ab + ba = 0` is checked on basis pairs.
    pub fn is_exact_on_basis(self) -> bool {
        matches!(
            self,
            Identity::Associative | Identity::LieJacobi | Identity::Anticommutative
        )
    }

    pub fn arity(self) -> usize {
        match self {
            Identity::Associative | Identity::LieJacobi => 3,
            Identity::Anticommutative => 1,
            _ => 2,
        }
    }

    fn sides(self, alg: &DerivedAlgebra, args: &[RingElement]) -> Result<(RingElement, RingElement)> {
        let m = |x: &RingElement, y: &RingElement| alg.mul(x, y);
        let a = &args[0];
        Ok(match self {
            Identity::LeftAlternative => (m(&m(a, a)?, &args[1])?, m(a, &m(a, &args[1])?)?),
            Identity::RightAlternative => (m(a, &m(&args[1], &args[1])?)?, m(&m(a, &args[1])?, &args[1])?),
            Identity::Elastic => (m(&m(a, &args[1])?, a)?, m(a, &m(&args[1], a)?)?),
            Identity::Jordan => {
                let aa = m(a, a)?;
                (m(&m(&aa, &args[1])?, a)?, m(&aa, &m(&args[1], a)?)?)
            }
            Identity::Associative => (m(&m(a, &args[1])?, &args[2])?, m(a, &m(&args[1], &args[2])?)?),
            Identity::LieJacobi => {
                let (b, c) = (&args[1], &args[2]);
                let s = m(&m(a, b)?, c)?.add(&m(&m(b, c)?, a)?)?.add(&m(&m(c, a)?, b)?)?;
                (s, alg.zero())
            }
            Identity::Anticommutative => (m(a, a)?, alg.zero()),
        })
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Basis,
    Random { bound: i128, trials: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMethod {
    /// Every basis tuple; a pass is a proof.
    Exact,
    /// Basis tuples of a non-multilinear identity; a pass proves nothing.
    BasisSample,
    RandomBox {
        bound: i128,
        trials: usize,
    },
}

impl fmt::Display for CheckMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckMethod::Exact => write!(f, "exact on basis tuples"),
            CheckMethod::BasisSample => write!(f, "basis tuples only (not a proof)"),
            CheckMethod::RandomBox { bound, trials } => {
                write!(f, "{trials} random samples in [-{bound}, {bound}] (not a proof)")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub equation: &'static str,
    pub args: Vec<RingElement>,
    pub lhs: RingElement,
    pub rhs: RingElement,
    /// Sum of absolute values of the integer coefficients of the arguments.
    pub weight: u128,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["a", "b", "c"];
        let args: Vec<String> = self.args.iter().zip(names).map(|(x, n)| format!("{n} = {x}")).collect();
        write!(
            f,
            "{} fails at {}: lhs = {}, rhs = {}",
            self.equation,
            args.join(", "),
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: Identity,
    pub kind: DerivedKind,
    pub ring: CoefficientRing,
    pub method: CheckMethod,
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }

    /// A pass that is a proof rather than a sample.
    pub fn proven(&self) -> bool {
        self.holds() && self.method == CheckMethod::Exact
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} product over {}): ", self.identity, self.kind, self.ring)?;
        match &self.counterexample {
            Some(c) => write!(f, "fails; {c}"),
            None if self.proven() => write!(f, "holds, {} checks, {}", self.checked, self.method),
            None => write!(f, "no counterexample found, {} checks, {}", self.checked, self.method),
        }
    }
}

fn weight(v: &[i128]) -> u128 {
    v.iter().map(|x| x.unsigned_abs()).sum()
}

fn split_args(alg: &DerivedAlgebra, v: &[i128]) -> Result<Vec<RingElement>> {
    v.chunks(alg.dim()).map(|c| alg.element(c)).collect()
}

/// Visits integer vectors of length `d` with `sum |v_i| = s` and
/// `|v_i| <= max_abs` in a fixed order; stops when `f` returns true.
fn l1_shell(d: usize, s: u128, max_abs: i128, f: &mut dyn FnMut(&[i128]) -> Result<bool>) -> Result<bool> {
    fn go(
        v: &mut Vec<i128>,
        d: usize,
        left: u128,
        max_abs: i128,
        f: &mut dyn FnMut(&[i128]) -> Result<bool>,
    ) -> Result<bool> {
        if v.len() == d {
            return if left == 0 { f(v) } else { Ok(false) };
        }
        let top = left.min(max_abs as u128) as i128;
        for a in 0..=top {
            let signs: &[i128] = if a == 0 { &[1] } else { &[1, -1] };
            for &sg in signs {
                v.push(sg * a);
                let stop = go(v, d, left - a as u128, max_abs, f)?;
                v.pop();
                if stop {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
    go(&mut Vec::with_capacity(d), d, s, max_abs, f)
}

fn failure(alg: &DerivedAlgebra, identity: Identity, v: &[i128]) -> Result<Option<Counterexample>> {
    let args = split_args(alg, v)?;
    let (lhs, rhs) = identity.sides(alg, &args)?;
    Ok((lhs != rhs).then(|| Counterexample {
        equation: identity.equation(),
        args,
        lhs,
        rhs,
        weight: weight(v),
    }))
}

/// Replaces a sampled counterexample by one of least weight, within budget.
fn minimize(alg: &DerivedAlgebra, identity: Identity, found: Counterexample) -> Result<Counterexample> {
    let d = alg.dim() * identity.arity();
    let max_abs = found
        .args
        .iter()
        .flat_map(|a| a.to_ints().unwrap_or_default())
        .map(|x| x.abs())
        .max()
        .unwrap_or(1);
    let mut spent = 0usize;
    let mut best = None;
    for s in 1..=found.weight {
        let mut cb = |v: &[i128]| -> Result<bool> {
            spent += 1;
            if spent > MINIMIZE_BUDGET {
                return Ok(true);
            }
            if let Some(c) = failure(alg, identity, v)? {
                best = Some(c);
                return Ok(true);
            }
            Ok(false)
        };
        if l1_shell(d, s, max_abs, &mut cb)? {
            break;
        }
    }
    Ok(best.unwrap_or(found))
}

fn basis_tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(arity as u32);
    (0..total).map(move |mut k| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = k % n;
            k /= n;
        }
        t
    })
}

fn unit_args(n: usize, tuple: &[usize]) -> Vec<i128> {
    let mut v = vec![0; n * tuple.len()];
    for (slot, &i) in tuple.iter().enumerate() {
        v[slot * n + i] = 1;
    }
    v
}

/// Checks a bilinear equation `x_i x_j = x_j x_i` on basis pairs.
fn commutativity(alg: &DerivedAlgebra, checked: &mut usize) -> Result<Option<Counterexample>> {
    let n = alg.dim();
    for i in 0..n {
        for j in i + 1..n {
            *checked += 1;
            let (a, b) = (alg.basis(i)?, alg.basis(j)?);
            let (lhs, rhs) = (alg.mul(&a, &b)?, alg.mul(&b, &a)?);
            if lhs != rhs {
                return Ok(Some(Counterexample {
                    equation: "a b = b a",
                    args: vec![a, b],
                    lhs,
                    rhs,
                    weight: 2,
                }));
            }
        }
    }
    Ok(None)
}

pub fn check_identity(alg: &DerivedAlgebra, identity: Identity, mode: CheckMode) -> Result<IdentityReport> {
    let n = alg.dim();
    let mut checked = 0usize;
    let report = |method, checked, counterexample| IdentityReport {
        identity,
        kind: alg.kind(),
        ring: alg.ring(),
        method,
        checked,
        counterexample,
    };

    if identity == Identity::Anticommutative {
        for i in 0..n {
            checked += 1;
            let a = alg.basis(i)?;
            let aa = alg.mul(&a, &a)?;
            if !aa.is_zero() {
                let c = Counterexample {
                    equation: "a a = 0",
                    args: vec![a],
                    lhs: aa,
                    rhs: alg.zero(),
                    weight: 1,
                };
                return Ok(report(CheckMethod::Exact, checked, Some(c)));
            }
            for j in i + 1..n {
                checked += 1;
                let b = alg.basis(j)?;
                let s = alg.mul(&a, &b)?.add(&alg.mul(&b, &a)?)?;
                if !s.is_zero() {
                    let c = Counterexample {
                        equation: "a b + b a = 0",
                        args: vec![a, b],
                        lhs: s,
                        rhs: alg.zero(),
                        weight: 2,
                    };
                    return Ok(report(CheckMethod::Exact, checked, Some(c)));
                }
            }
        }
        return Ok(report(CheckMethod::Exact, checked, None));
    }

    if identity == Identity::Jordan {
        if let Some(c) = commutativity(alg, &mut checked)? {
            return Ok(report(CheckMethod::Exact, checked, Some(c)));
        }
    }

    let exact = identity.is_exact_on_basis();
    if exact || mode == CheckMode::Basis {
        let method = if exact {
            CheckMethod::Exact
        } else {
            CheckMethod::BasisSample
        };
        for t in basis_tuples(n, identity.arity()) {
            checked += 1;
            if let Some(c) = failure(alg, identity, &unit_args(n, &t))? {
                return Ok(report(method, checked, Some(c)));
            }
        }
        return Ok(report(method, checked, None));
    }

    let CheckMode::Random { bound, trials, seed } = mode else {
        unreachable!("basis mode handled above")
    };
    if bound < 1 {
        return Err(Error::Unsupported("the coefficient bound must be at least 1".into()));
    }
    let method = CheckMethod::RandomBox { bound, trials };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = n * identity.arity();
    for _ in 0..trials {
        checked += 1;
        let v: Vec<i128> = (0..d).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Some(c) = failure(alg, identity, &v)? {
            let c = minimize(alg, identity, c)?;
            return Ok(report(method, checked, Some(c)));
        }
    }
    Ok(report(method, checked, None))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerAssociativityReport {
    /// `x` with `(xx)(xx) != ((xx)x)x`, with both sides.
    pub witness: Option<Counterexample>,
    /// The widest box searched.
    pub bound: i128,
    pub checked: usize,
    /// True when every vector of the final box was visited.
    pub exhaustive: bool,
}

impl fmt::Display for PowerAssociativityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Some(c) => write!(f, "not power-associative; {c}"),
            None => write!(
                f,
                "no witness within bounds [-{b}, {b}] after {} checks{}",
                self.checked,
                if self.exhaustive { " (box exhausted)" } else { "" },
                b = self.bound
            ),
        }
    }
}

fn power_failure(alg: &DerivedAlgebra, v: &[i128]) -> Result<Option<Counterexample>> {
    let x = alg.element(v)?;
    let xx = alg.mul(&x, &x)?;
    let lhs = alg.mul(&xx, &xx)?;
    let rhs = alg.mul(&alg.mul(&xx, &x)?, &x)?;
    Ok((lhs != rhs).then(|| Counterexample {
        equation: "(x x)(x x) = ((x x) x) x",
        args: vec![x],
        lhs,
        rhs,
        weight: weight(v),
    }))
}

/// Searches boxes `[-B, B]` from `bound` up to `WIDEST_BOX`. A box is
/// enumerated by increasing weight when it has at most `trials` points,
/// otherwise `trials` seeded samples are drawn from it.
pub fn power_associative_witness(
    alg: &DerivedAlgebra,
    bound: i128,
    trials: usize,
    seed: u64,
) -> Result<PowerAssociativityReport> {
    if bound < 1 {
        return Err(Error::Unsupported("the coefficient bound must be at least 1".into()));
    }
    let n = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0usize;
    let mut exhaustive = false;
    let last = bound.max(WIDEST_BOX);
    for b in bound..=last {
        let points = (2 * b as u128 + 1).checked_pow(n as u32);
        exhaustive = points.is_some_and(|p| p <= trials as u128);
        let mut witness = None;
        if exhaustive {
            let top = n as u128 * b as u128;
            for s in 1..=top {
                let mut cb = |v: &[i128]| -> Result<bool> {
                    checked += 1;
                    witness = power_failure(alg, v)?;
                    Ok(witness.is_some())
                };
                if l1_shell(n, s, b, &mut cb)? {
                    break;
                }
            }
        } else {
            for _ in 0..trials {
                checked += 1;
                let v: Vec<i128> = (0..n).map(|_| rng.gen_range(-b..=b)).collect();
                if let Some(c) = power_failure(alg, &v)? {
                    witness = Some(c);
                    break;
                }
            }
        }
        if witness.is_some() {
            return Ok(PowerAssociativityReport {
                witness,
                bound: b,
                checked,
                exhaustive,
            });
        }
    }
    Ok(PowerAssociativityReport {
        witness: None,
        bound: last,
        checked,
        exhaustive,
    })
}

/// The identities whose failure the non-associativity report looks for.
pub const NON_ASSOC_IDENTITIES: [Identity; 3] = [Identity::LeftAlternative, Identity::Elastic, Identity::Jordan];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonAssociativityReport {
    pub trivial_quandle: bool,
    pub identities: Vec<IdentityReport>,
    pub power: PowerAssociativityReport,
}

impl NonAssociativityReport {
    /// At least one of left-alternative, elastic, Jordan failed.
    pub fn any_failure(&self) -> bool {
        self.identities.iter().any(|r| !r.holds())
    }
}

/// Runs the alternative, elastic, Jordan and power-associativity probes on
/// `R[Q]`. Coefficient rings in which 2 or 3 is not a unit are refused.
pub fn non_associativity_report(
    q: &Arc<FiniteQuandle>,
    ring: CoefficientRing,
    bound: i128,
    trials: usize,
    seed: u64,
) -> Result<NonAssociativityReport> {
    let p = ring.characteristic();
    if p != 0 && (p.is_multiple_of(2) || p.is_multiple_of(3)) {
        return Err(Error::ExcludedCharacteristic(p));
    }
    let alg = DerivedAlgebra::new(q, ring, DerivedKind::Raw)?;
    let mut identities = Vec::new();
    for (k, id) in NON_ASSOC_IDENTITIES.into_iter().enumerate() {
        let mode = CheckMode::Random {
            bound,
            trials,
            seed: seed.wrapping_add(k as u64),
        };
        identities.push(check_identity(&alg, id, mode)?);
    }
    Ok(NonAssociativityReport {
        trivial_quandle: crate::quandle::predicates(q).trivial,
        identities,
        power: power_associative_witness(&alg, bound, trials, seed)?,
    })
}

/// Closes a span under the algebra product of its basis rows.
fn close(alg: &DerivedAlgebra, mut span: Span) -> Result<Span> {
    loop {
        let rows = span_elements(alg, &span)?;
        let mut grew = false;
        for a in &rows {
            for b in &rows {
                grew |= span.insert_mut(&alg.mul(a, b)?.dense())?;
            }
        }
        if !grew {
            return Ok(span);
        }
    }
}

fn span_elements(alg: &DerivedAlgebra, span: &Span) -> Result<Vec<RingElement>> {
    span.rows()
        .iter()
        .map(|r| RingElement::from_dense(alg.quandle(), alg.ring(), r))
        .collect()
}

fn same_span(a: &Span, b: &Span) -> Result<bool> {
    Ok(a.includes(b)? && b.includes(a)?)
}

/// Subalgebra generated by all products `u v` with `u` in `left`, `v` in
/// `right`, and the reverse order.
fn product_subalgebra(alg: &DerivedAlgebra, left: &[RingElement], right: &[RingElement]) -> Result<Span> {
    let mut span = Span::new(alg.ring(), alg.dim())?;
    for a in left {
        for b in right {
            span.insert_mut(&alg.mul(a, b)?.dense())?;
            span.insert_mut(&alg.mul(b, a)?.dense())?;
        }
    }
    close(alg, span)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAnalysis {
    pub n: usize,
    pub ring: CoefficientRing,
    /// `x_1 - x_2, x_2 - x_3, ...` in `R[T_n]`, labelled from 1.
    pub l2_basis: Vec<RingElement>,
    pub l2_rank: usize,
    /// The listed basis spans `L^2` and is independent.
    pub l2_basis_verified: bool,
    pub l2_equals_l3: bool,
    pub l2_squared_zero: bool,
    /// `None` when 2 is not invertible in the ring.
    pub j2_equals_j: Option<bool>,
}

impl fmt::Display for LieAnalysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis: Vec<String> = self.l2_basis.iter().map(|e| e.to_string()).collect();
        writeln!(f, "trivial quandle T_{} over {}", self.n, self.ring)?;
        writeln!(
            f,
            "L^2 basis: {{{}}} (rank {}, verified: {})",
            basis.join(", "),
            self.l2_rank,
            self.l2_basis_verified
        )?;
        writeln!(f, "L^2 = L^3: {}", self.l2_equals_l3)?;
        writeln!(f, "(L^2)^2 = 0: {}", self.l2_squared_zero)?;
        match self.j2_equals_j {
            Some(b) => write!(f, "J^2 = J: {b}"),
            None => write!(f, "J^2 = J: not computed (2 is not invertible)"),
        }
    }
}

/// `L = R[T_n]^(-)` and `J = R[T_n]^(+)`, with `T_n` labelled `x1..xn`.
pub fn trivial_quandle_lie_analysis(n: usize, ring: CoefficientRing) -> Result<LieAnalysis> {
    let labels: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let q = Arc::new(FiniteQuandle::trivial(n)?.with_labels(&labels)?);
    let lie = DerivedAlgebra::new(&q, ring, DerivedKind::Minus)?;
    let gens: Vec<RingElement> = (0..n).map(|i| lie.basis(i)).collect::<Result<_>>()?;

    let l2 = product_subalgebra(&lie, &gens, &gens)?;
    let l2_elems = span_elements(&lie, &l2)?;
    let l3 = product_subalgebra(&lie, &l2_elems, &gens)?;
    let l2_squared = product_subalgebra(&lie, &l2_elems, &l2_elems)?;

    let l2_basis: Vec<RingElement> = (0..n.saturating_sub(1))
        .map(|i| gens[i].sub(&gens[i + 1]))
        .collect::<Result<_>>()?;
    let mut listed = Span::new(ring, n)?;
    for e in &l2_basis {
        listed.insert_mut(&e.dense())?;
    }
    let l2_basis_verified = listed.rank() == l2_basis.len() && same_span(&listed, &l2)?;

    let j2_equals_j = match DerivedAlgebra::new(&q, ring, DerivedKind::Plus) {
        Ok(jordan) => {
            let j2 = product_subalgebra(&jordan, &gens, &gens)?;
            let mut whole = Span::new(ring, n)?;
            for g in &gens {
                whole.insert_mut(&g.dense())?;
            }
            Some(same_span(&j2, &whole)?)
        }
        Err(Error::TwoNotInvertible(_)) => None,
        Err(e) => return Err(e),
    };

    Ok(LieAnalysis {
        n,
        ring,
        l2_rank: l2.rank(),
        l2_basis,
        l2_basis_verified,
        l2_equals_l3: same_span(&l2, &l3)?,
        l2_squared_zero: l2_squared.is_zero(),
        j2_equals_j,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const Z: CoefficientRing = CoefficientRing::Integers;
    const Q: CoefficientRing = CoefficientRing::Rationals;

    fn raw(q: FiniteQuandle) -> DerivedAlgebra {
        DerivedAlgebra::new(&Arc::new(q), Z, DerivedKind::Raw).unwrap()
    }

    fn random(trials: usize) -> CheckMode {
        CheckMode::Random {
            bound: 2,
            trials,
            seed: 7,
        }
    }

    #[test]
    fn trivial_ring_is_associative() {
        for n in 1..=4 {
            let r = check_identity(
                &raw(FiniteQuandle::trivial(n).unwrap()),
                Identity::Associative,
                CheckMode::Basis,
            )
            .unwrap();
            assert!(r.proven());
            assert_eq!(r.checked, n * n * n);
        }
    }

    #[test]
    fn elastic_witness_is_minimal() {
        let alg = raw(FiniteQuandle::cs4());
        let r = check_identity(&alg, Identity::Elastic, random(500)).unwrap();
        let c = r.counterexample.expect("witness");
        let (lhs, rhs) = Identity::Elastic.sides(&alg, &c.args).unwrap();
        assert_ne!(lhs, rhs);
        assert_eq!((c.lhs, c.rhs), (lhs, rhs));
        // Brute force: nothing of smaller weight fails.
        for v in box_vectors(6, 1) {
            if weight(&v) < c.weight {
                assert!(failure(&alg, Identity::Elastic, &v).unwrap().is_none());
            }
        }
    }

    #[test]
    fn commutative_dihedral_three_is_elastic_but_not_jordan() {
        let alg = raw(FiniteQuandle::dihedral(3).unwrap());
        // (ab)a = a(ab) = a(ba) in any commutative algebra.
        let r = check_identity(&alg, Identity::Elastic, random(500)).unwrap();
        assert!(r.holds() && !r.proven());
        let r = check_identity(&alg, Identity::Jordan, random(500)).unwrap();
        assert!(!r.holds());
        let r = check_identity(&alg, Identity::LeftAlternative, random(500)).unwrap();
        assert!(!r.holds());
    }

    fn box_vectors(d: usize, b: i128) -> Vec<Vec<i128>> {
        (0..d).fold(vec![vec![]], |acc, _| {
            acc.into_iter()
                .flat_map(|p: Vec<i128>| {
                    (-b..=b).map(move |x| {
                        let mut p = p.clone();
                        p.push(x);
                        p
                    })
                })
                .collect()
        })
    }

    #[test]
    fn jacobi_on_trivial_minus_algebra() {
        let t3 = Arc::new(FiniteQuandle::trivial(3).unwrap());
        let lie = DerivedAlgebra::new(&t3, Z, DerivedKind::Minus).unwrap();
        assert!(check_identity(&lie, Identity::LieJacobi, CheckMode::Basis)
            .unwrap()
            .proven());
        assert!(check_identity(&lie, Identity::Anticommutative, CheckMode::Basis)
            .unwrap()
            .proven());
    }

    #[test]
    fn plus_needs_two_invertible() {
        let t2 = Arc::new(FiniteQuandle::trivial(2).unwrap());
        for ring in [Z, CoefficientRing::integers_mod(4).unwrap()] {
            assert_eq!(
                DerivedAlgebra::new(&t2, ring, DerivedKind::Plus).unwrap_err(),
                Error::TwoNotInvertible(ring)
            );
        }
        assert!(DerivedAlgebra::new(&t2, CoefficientRing::integers_mod(5).unwrap(), DerivedKind::Plus).is_ok());
    }

    #[test]
    fn trivial_quandle_products() {
        let n = 4;
        let t = Arc::new(FiniteQuandle::trivial(n).unwrap());
        let lie = DerivedAlgebra::new(&t, Q, DerivedKind::Minus).unwrap();
        let jordan = DerivedAlgebra::new(&t, Q, DerivedKind::Plus).unwrap();
        let x: Vec<RingElement> = (0..n).map(|i| lie.basis(i).unwrap()).collect();
        let half = Q.from_fraction(1, 2).unwrap();
        for i in 0..n - 1 {
            let e = x[i].sub(&x[i + 1]).unwrap();
            for xj in &x {
                assert_eq!(lie.mul(&e, xj).unwrap(), e);
                assert_eq!(lie.mul(xj, &e).unwrap(), e.neg());
            }
        }
        for a in &x {
            for b in &x {
                assert_eq!(jordan.mul(a, b).unwrap(), a.add(b).unwrap().scale(half).unwrap());
            }
        }
    }

    #[test]
    fn power_associativity() {
        for q in [FiniteQuandle::dihedral(3).unwrap(), FiniteQuandle::cs4()] {
            let r = power_associative_witness(&raw(q), 2, 10_000, 1).unwrap();
            let c = r.witness.expect("witness");
            assert_ne!(c.lhs, c.rhs);
            assert!(r.bound <= 2);
        }
        let r = power_associative_witness(&raw(FiniteQuandle::trivial(4).unwrap()), 2, 10_000, 1).unwrap();
        assert!(r.witness.is_none());
        assert_eq!(r.bound, WIDEST_BOX);
        assert!(r.exhaustive);
    }

    #[test]
    fn lie_analysis() {
        let a = trivial_quandle_lie_analysis(4, Q).unwrap();
        assert_eq!(a.l2_rank, 3);
        assert!(a.l2_basis_verified && a.l2_equals_l3 && a.l2_squared_zero);
        assert_eq!(a.j2_equals_j, Some(true));
        let names: Vec<String> = a.l2_basis.iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["x1 - x2", "x2 - x3", "x3 - x4"]);

        let a = trivial_quandle_lie_analysis(2, Q).unwrap();
        assert_eq!(a.l2_rank, 1);

        let a = trivial_quandle_lie_analysis(1, Q).unwrap();
        assert_eq!(a.l2_rank, 0);
        assert!(a.l2_basis.is_empty() && a.l2_basis_verified && a.l2_equals_l3);

        let a = trivial_quandle_lie_analysis(3, Z).unwrap();
        assert_eq!((a.l2_rank, a.j2_equals_j), (2, None));
        assert!(a.l2_basis_verified);
    }

    #[test]
    fn nontrivial_catalog_fails_some_identity() {
        for (name, q) in catalog::finite_entries() {
            if crate::quandle::predicates(&q).trivial {
                continue;
            }
            let r = non_associativity_report(&q, Z, 2, 400, 3).unwrap();
            assert!(r.any_failure(), "{name}");
        }
    }

    #[test]
    fn small_characteristics_refused() {
        let r3 = Arc::new(FiniteQuandle::dihedral(3).unwrap());
        for m in [2, 3, 9] {
            let ring = CoefficientRing::integers_mod(m).unwrap();
            assert!(matches!(
                non_associativity_report(&r3, ring, 2, 10, 0),
                Err(Error::ExcludedCharacteristic(_))
            ));
        }
        assert!(non_associativity_report(&r3, CoefficientRing::integers_mod(5).unwrap(), 2, 200, 0).is_ok());
    }
}
