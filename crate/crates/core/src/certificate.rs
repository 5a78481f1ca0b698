//! Re-verifiable certificate files.
//!
//! A file holds blocks separated by blank lines. Each block is a list of
//! `key = value` lines in a fixed order and ends with a sha256 digest of the
//! preceding lines of the block:
//!
//! ```text
//! certificate = commutator
//! quandle = R4
//! ring = z
//! row = 0 3 2 1
//! ...
//! labels = a0 a1 a2 a3
//! element = a0 - a1
//! term = 1 ; a1 ; a2
//! digest = sha256:...
//! ```
//!
//! Verification recomputes the digest, checks that the block is in
//! canonical form, rebuilds the quandle from its rows and re-checks the
//! algebraic claim from scratch.

use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::automorphisms::{is_ring_automorphism, IntMatrix};
use crate::coeffs::{CoefficientRing, Scalar};
use crate::commutators::CommutatorCertificate;
use crate::error::{Error, Result};
use crate::quandle::{verify_quandle, FiniteQuandle};
use crate::ring::{parse_element, RingElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    /// `u = sum s_i [l_i, r_i]`.
    Commutator(CommutatorCertificate),
    /// Nonzero `left`, `right` with `left * right = 0`.
    ZeroDivisor { left: RingElement, right: RingElement },
    /// Distinct elements with `z^2 = z`.
    Idempotents(Vec<RingElement>),
    /// A unimodular matrix whose columns multiply like the basis.
    Automorphism(IntMatrix),
}

impl Claim {
    pub fn kind(&self) -> &'static str {
        match self {
            Claim::Commutator(_) => "commutator",
            Claim::ZeroDivisor { .. } => "zero-divisor",
            Claim::Idempotents(_) => "idempotents",
            Claim::Automorphism(_) => "automorphism",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// Catalog name, or `table` for a quandle read from a file.
    pub name: String,
    pub quandle: Arc<FiniteQuandle>,
    pub ring: CoefficientRing,
    pub claim: Claim,
}

impl Certificate {
    pub fn new(name: &str, quandle: &Arc<FiniteQuandle>, ring: CoefficientRing, claim: Claim) -> Self {
        Certificate {
            name: name.to_string(),
            quandle: Arc::clone(quandle),
            ring,
            claim,
        }
    }

    /// Re-checks the claim.
    pub fn verify(&self) -> Result<()> {
        let fail = |m: String| Err(Error::VerificationFailed(m));
        let elements: Vec<&RingElement> = match &self.claim {
            Claim::Commutator(c) => std::iter::once(&c.element)
                .chain(c.terms.iter().flat_map(|(_, l, r)| [l, r]))
                .collect(),
            Claim::ZeroDivisor { left, right } => vec![left, right],
            Claim::Idempotents(v) => v.iter().collect(),
            Claim::Automorphism(_) => vec![],
        };
        for e in elements {
            if e.ring() != self.ring || !e.quandle().same_structure(&self.quandle) {
                return Err(Error::RingMismatch);
            }
        }
        match &self.claim {
            Claim::Commutator(c) => {
                if c.terms.iter().any(|(s, _, _)| s.ring() != self.ring) {
                    return Err(Error::RingMismatch);
                }
                let value = c.evaluate()?;
                if value != c.element {
                    return fail(format!("the decomposition evaluates to {value}, not {}", c.element));
                }
            }
            Claim::ZeroDivisor { left, right } => {
                if left.is_zero() || right.is_zero() {
                    return fail("a zero-divisor pair needs two nonzero elements".into());
                }
                let p = left.mul(right)?;
                if !p.is_zero() {
                    return fail(format!("the product is {p}, not 0"));
                }
            }
            Claim::Idempotents(v) => {
                for (k, z) in v.iter().enumerate() {
                    let sq = z.mul(z)?;
                    if sq != *z {
                        return fail(format!("({z})^2 = {sq}"));
                    }
                    if v[..k].contains(z) {
                        return fail(format!("{z} is listed twice"));
                    }
                }
            }
            Claim::Automorphism(m) => {
                if self.ring != CoefficientRing::Integers {
                    return Err(Error::Unsupported("automorphism certificates are over z".into()));
                }
                if m.order() != self.quandle.order() {
                    return Err(Error::DimensionMismatch {
                        expected: self.quandle.order(),
                        found: m.order(),
                    });
                }
                if !m.is_unimodular() {
                    return fail(format!("determinant {} is not a unit", m.det()));
                }
                if !is_ring_automorphism(&self.quandle, m) {
                    return fail("the matrix is not multiplicative".into());
                }
            }
        }
        Ok(())
    }

    fn body(&self) -> String {
        let q = &self.quandle;
        let mut out = format!(
            "certificate = {}\nquandle = {}\nring = {}\n",
            self.claim.kind(),
            self.name,
            self.ring
        );
        for i in 0..q.order() {
            let row: Vec<String> = q.row(i).iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("row = {}\n", row.join(" ")));
        }
        out.push_str(&format!("labels = {}\n", q.labels().join(" ")));
        match &self.claim {
            Claim::Commutator(c) => {
                out.push_str(&format!("element = {}\n", literal(&c.element)));
                for (s, l, r) in &c.terms {
                    out.push_str(&format!("term = {s} ; {} ; {}\n", literal(l), literal(r)));
                }
            }
            Claim::ZeroDivisor { left, right } => {
                out.push_str(&format!("left = {}\nright = {}\n", literal(left), literal(right)));
            }
            Claim::Idempotents(v) => {
                for z in v {
                    out.push_str(&format!("element = {}\n", literal(z)));
                }
            }
            Claim::Automorphism(m) => out.push_str(&format!("matrix = {}\n", m.to_compact())),
        }
        out
    }

    /// The canonical block, digest line included.
    pub fn to_text(&self) -> String {
        let body = self.body();
        format!("{body}digest = sha256:{}\n", digest(&body))
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn digest(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

/// The display form when it parses back to the same element, else the
/// dense vector form.
fn literal(u: &RingElement) -> String {
    let s = u.to_string();
    match parse_element(u.quandle(), u.ring(), &s) {
        Ok(v) if v == *u => s,
        _ => {
            let parts: Vec<String> = u.dense().iter().map(|c| c.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }
}

pub fn write_certificates(certs: &[Certificate]) -> String {
    certs.iter().map(Certificate::to_text).collect::<Vec<_>>().join("\n")
}

fn parse_scalar(ring: CoefficientRing, s: &str) -> Result<Scalar> {
    let bad = || Error::Parse(format!("bad scalar `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => ring.from_fraction(n.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?),
        None => Ok(ring.from_int(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_matrix(s: &str) -> Result<IntMatrix> {
    let bad = || Error::Parse(format!("bad matrix `{s}`"));
    let inner = s
        .strip_prefix("[[")
        .and_then(|t| t.strip_suffix("]]"))
        .ok_or_else(bad)?;
    let rows = inner
        .split("],[")
        .map(|r| r.split(',').map(|x| x.parse::<i128>().map_err(|_| bad())).collect())
        .collect::<Result<Vec<Vec<i128>>>>()?;
    IntMatrix::new(rows)
}

struct Lines<'a> {
    items: Vec<(&'a str, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn peek_key(&self) -> Option<&'a str> {
        self.items.get(self.pos).map(|(k, _)| *k)
    }

    fn take(&mut self, key: &str) -> Result<&'a str> {
        match self.items.get(self.pos) {
            Some((k, v)) if *k == key => {
                self.pos += 1;
                Ok(v)
            }
            Some((k, _)) => Err(Error::Parse(format!("expected `{key}`, found `{k}`"))),
            None => Err(Error::Parse(format!("expected `{key}`, found the end of the block"))),
        }
    }

    fn take_all(&mut self, key: &str) -> Vec<&'a str> {
        let mut out = Vec::new();
        while self.peek_key() == Some(key) {
            out.push(self.items[self.pos].1);
            self.pos += 1;
        }
        out
    }
}

fn parse_block(block: &str) -> Result<Certificate> {
    let (body, last) = match block.trim_end_matches('\n').rsplit_once('\n') {
        Some((b, l)) => (format!("{b}\n"), l),
        None => return Err(Error::Parse("a certificate needs a digest line".into())),
    };
    let claimed = last
        .strip_prefix("digest = sha256:")
        .ok_or_else(|| Error::Parse("the last line must be `digest = sha256:<hex>`".into()))?;
    if claimed != digest(&body) {
        return Err(Error::VerificationFailed("digest mismatch".into()));
    }
    let items = body
        .lines()
        .map(|l| {
            l.split_once(" = ")
                .ok_or_else(|| Error::Parse(format!("expected `key = value`: `{l}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut lines = Lines { items, pos: 0 };
    let kind = lines.take("certificate")?;
    let name = lines.take("quandle")?.to_string();
    let ring = CoefficientRing::parse(lines.take("ring")?)?;
    let rows = lines
        .take_all("row")
        .into_iter()
        .map(|r| {
            r.split(' ')
                .map(|x| {
                    x.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad table row `{r}`")))
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<usize>>>>()?;
    let labels: Vec<&str> = lines.take("labels")?.split(' ').collect();
    let mut q = verify_quandle(&rows)?;
    if q.labels() != labels {
        q = q.with_labels(&labels)?;
    }
    let q = Arc::new(q);
    let el = |s: &str| parse_element(&q, ring, s);
    let claim = match kind {
        "commutator" => {
            let element = el(lines.take("element")?)?;
            let terms = lines
                .take_all("term")
                .into_iter()
                .map(|t| {
                    let parts: Vec<&str> = t.split(" ; ").collect();
                    match parts[..] {
                        [s, l, r] => Ok((parse_scalar(ring, s)?, el(l)?, el(r)?)),
                        _ => Err(Error::Parse(format!("bad term `{t}`"))),
                    }
                })
                .collect::<Result<_>>()?;
            Claim::Commutator(CommutatorCertificate { element, terms })
        }
        "zero-divisor" => Claim::ZeroDivisor {
            left: el(lines.take("left")?)?,
            right: el(lines.take("right")?)?,
        },
        "idempotents" => Claim::Idempotents(lines.take_all("element").into_iter().map(el).collect::<Result<_>>()?),
        "automorphism" => Claim::Automorphism(parse_matrix(lines.take("matrix")?)?),
        other => return Err(Error::Parse(format!("unknown certificate kind `{other}`"))),
    };
    if let Some(k) = lines.peek_key() {
        return Err(Error::Parse(format!("unexpected `{k}` line")));
    }
    let cert = Certificate {
        name,
        quandle: q,
        ring,
        claim,
    };
    if cert.body() != body {
        return Err(Error::VerificationFailed("the block is not in canonical form".into()));
    }
    Ok(cert)
}

/// Parses and re-verifies every block; the error names the first bad block.
pub fn verify_certificates(text: &str) -> Result<Vec<Certificate>> {
    let blocks: Vec<&str> = text.split("\n\n").filter(|b| !b.trim().is_empty()).collect();
    if blocks.is_empty() {
        return Err(Error::Parse("no certificates found".into()));
    }
    let mut out = Vec::with_capacity(blocks.len());
    for (k, b) in blocks.iter().enumerate() {
        let wrap = |e: Error| Error::VerificationFailed(format!("certificate {}: {e}", k + 1));
        let cert = parse_block(b).map_err(wrap)?;
        cert.verify().map_err(wrap)?;
        out.push(cert);
    }
    Ok(out)
}
