//! The `quandlekit` command line.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a check
//! fails (an `--expect-*` mismatch, an invalid table, a rejected
//! certificate).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::automorphisms::{
    automorphisms_bounded, group_order_small, r4_generators, r4_relations, t2_generators, t2_relation_instances,
    verify_relations, GroupClosure, DEFAULT_GROUP_CAP,
};
use crate::catalog::{self, CatalogObject};
use crate::certificate::{verify_certificates, write_certificates, Certificate, Claim};
use crate::coeffs::CoefficientRing;
use crate::commutators::{
    cl_exact_small, closure_equals_delta, commutator_subalgebra, contained_in_delta, cw_certificate,
    strongly_noncomm_delta_equality, width_bounds, width_one_shape, ClSearch,
};
use crate::error::{Error, Result};
use crate::idempotents::{
    family_covers_box, idempotents_box, idempotents_modular, registry, verify_family, DEFAULT_BUDGET,
    DEFAULT_GRID_RADIUS,
};
use crate::infinite::{order_monotonicity_sample, Side};
use crate::nonassoc::{
    check_identity, non_associativity_report, power_associative_witness, trivial_quandle_lie_analysis, CheckMode,
    DerivedAlgebra, DerivedKind, Identity,
};
use crate::order_zero::{
    extended_ring_witness, find_order, unique_products, up_sample_free, up_sample_int, zero_divisor_witness, Strategy,
};
use crate::quandle::{parse_table_file, predicates, write_table_file, FiniteQuandle};
use crate::report::{Format, Report};
use crate::ring::{parse_element, RingElement};
use crate::substructures::{
    certify_not_extendable, certify_parametric_quandle, cs4_diagonal_part, cs4_line_part, cs4_n1, cs4_n2,
    r4_maximal_quandle,
};
use crate::substructures::{
    maximal_quandles_with_budget, mq_reduction_check, DEFAULT_MAX_ELEMENTS, DEFAULT_NODE_BUDGET,
};

#[derive(Debug, Parser)]
#[command(name = "quandlekit", version, about = "Exact computations in quandle rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Catalog name, or T<n> / R<n>.
    #[arg(long, conflicts_with = "table")]
    pub quandle: Option<String>,
    /// Quandle table file.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    #[arg(long, default_value = "text", value_parser = parse_format)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<Format> {
    s.parse()
}

fn parse_ring(s: &str) -> Result<CoefficientRing> {
    CoefficientRing::parse(s)
}

fn parse_identity(s: &str) -> Result<Identity> {
    s.parse()
}

fn parse_kind(s: &str) -> Result<DerivedKind> {
    s.parse()
}

fn parse_strategy(s: &str) -> Result<Strategy> {
    Strategy::parse(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SideArg {
    Left,
    Right,
    Both,
}

impl SideArg {
    fn sides(self) -> Vec<Side> {
        match self {
            SideArg::Left => vec![Side::Left],
            SideArg::Right => vec![Side::Right],
            SideArg::Both => vec![Side::Right, Side::Left],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeArg {
    Basis,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the quandle axioms for a table.
    Verify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Write a quandle table file.
    Make {
        #[arg(long)]
        quandle: String,
        /// Space-separated labels.
        #[arg(long)]
        labels: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trivial, latin, involutary, commutative and related predicates.
    Predicates {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Idempotents in a coefficient box (z) or in all of R[Q] (zmod).
    Idempotents {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "z", value_parser = parse_ring)]
        ring: CoefficientRing,
        #[arg(long, default_value_t = 2)]
        bound: i128,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Expected number of nonzero idempotents.
        #[arg(long)]
        expect_count: Option<usize>,
        /// Certify the built-in parametric families and their box coverage.
        #[arg(long)]
        families: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Maximal quandles among idempotents.
    MaximalQuandles {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "z", value_parser = parse_ring)]
        ring: CoefficientRing,
        #[arg(long, default_value_t = 2)]
        bound: i128,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
        #[arg(long)]
        expect_count: Option<usize>,
        /// Compare the integral maximal quandles with those over Z_m.
        #[arg(long)]
        reduction: Option<u64>,
        /// Certify the infinite parametric quandles (R4, Cs4).
        #[arg(long)]
        parametric: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Automorphisms of Z[Q] with entries in [-bound, bound].
    Automorphisms {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 2)]
        bound: i128,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Expected number of matrices within the bound.
        #[arg(long)]
        expect_count: Option<usize>,
        /// Close the found matrices under multiplication.
        #[arg(long)]
        closure: bool,
        #[arg(long)]
        expect_group_order: Option<usize>,
        /// Check the generator relations known for T2 and R4.
        #[arg(long)]
        relations: bool,
        #[arg(long, default_value_t = 5)]
        relation_radius: i128,
        #[command(flatten)]
        output: Output,
    },
    /// The commutator subalgebra and commutator length.
    Commutators {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "z", value_parser = parse_ring)]
        ring: CoefficientRing,
        /// Search a short commutator decomposition of this element.
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        bound: i128,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[command(flatten)]
        output: Output,
    },
    /// Commutator width certificates.
    Cw {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "z", value_parser = parse_ring)]
        ring: CoefficientRing,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        bound: i128,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[command(flatten)]
        output: Output,
    },
    /// Right and left orders preserved by translations.
    Order {
        #[arg(long)]
        quandle: String,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
        /// Samples for infinite quandles.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 100)]
        window: i128,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Uniquely represented products of two finite subsets.
    UniqueProducts {
        #[arg(long)]
        quandle: String,
        /// Comma-separated elements (integers, labels or indices).
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        output: Output,
    },
    /// Zero-divisor witnesses, or sampling for infinite quandles.
    ZeroDivisor {
        #[arg(long)]
        quandle: Option<String>,
        #[arg(long, conflicts_with = "quandle")]
        table: Option<PathBuf>,
        #[arg(long, default_value = "z", value_parser = parse_ring)]
        ring: CoefficientRing,
        #[arg(long, default_value = "auto", value_parser = parse_strategy)]
        strategy: Strategy,
        /// Also give x (e - x) = 0 in the ring with a unit adjoined.
        #[arg(long)]
        extended: Option<String>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        support: usize,
        #[arg(long, default_value_t = 2)]
        coeff_bound: i128,
        #[arg(long, default_value_t = 20)]
        window: i128,
        #[arg(long, default_value_t = 3)]
        max_word_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Non-associative identities of R[Q] and its derived algebras.
    Identities {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "z", value_parser = parse_ring)]
        ring: CoefficientRing,
        #[arg(long, default_value = "raw", value_parser = parse_kind)]
        kind: DerivedKind,
        /// Repeatable; all identities when omitted.
        #[arg(long, value_parser = parse_identity)]
        identity: Vec<Identity>,
        #[arg(long, value_enum, default_value = "random")]
        mode: ModeArg,
        #[arg(long, default_value_t = 2)]
        bound: i128,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Search (xx)(xx) != ((xx)x)x.
        #[arg(long)]
        power: bool,
        /// The alternative/elastic/Jordan/power report (not over Z_2, Z_3).
        #[arg(long)]
        non_associativity: bool,
        #[command(flatten)]
        output: Output,
    },
    /// L = R[T_n]^(-) and J = R[T_n]^(+).
    LieAnalysis {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "q", value_parser = parse_ring)]
        ring: CoefficientRing,
        #[command(flatten)]
        output: Output,
    },
    /// Re-verify a certificate file.
    VerifyCertificate {
        path: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Names, orders and descriptions of the built-in quandles.
    ListCatalog {
        #[command(flatten)]
        output: Output,
    },
}

/// A finished command: the report and, when a check failed, why.
struct Outcome {
    report: Report,
    format: Format,
    failure: Option<String>,
    /// Printed verbatim instead of the report.
    raw: Option<String>,
}

impl Outcome {
    fn ok(report: Report, format: Format) -> Self {
        Outcome {
            report,
            format,
            failure: None,
            raw: None,
        }
    }

    fn failed(report: Report, format: Format, why: String) -> Self {
        Outcome {
            report,
            format,
            failure: Some(why),
            raw: None,
        }
    }

    fn expect(mut self, what: &str, expected: Option<usize>, actual: usize) -> Self {
        if let Some(e) = expected {
            if e != actual && self.failure.is_none() {
                self.failure = Some(format!("expected {what} {e}, found {actual}"));
            }
        }
        self
    }
}

struct Named {
    name: String,
    q: Arc<FiniteQuandle>,
}

fn load(source: &Source) -> Result<Named> {
    match (&source.quandle, &source.table) {
        (Some(name), None) => Ok(Named {
            name: catalog::canonical_name(name),
            q: catalog::get_finite(name)?,
        }),
        (None, Some(path)) => Ok(Named {
            name: "table".into(),
            q: Arc::new(parse_table_file(&fs::read_to_string(path)?)?),
        }),
        _ => Err(Error::Parse("give exactly one of --quandle or --table".into())),
    }
}

fn write_out(path: &Path, text: &str, report: &mut Report) -> Result<()> {
    fs::write(path, text)?;
    report.push("written", path.display());
    Ok(())
}

/// Listing order: smaller support first, then earlier basis elements first.
fn listing_order(elements: &[RingElement]) -> Vec<RingElement> {
    let mut out = elements.to_vec();
    out.sort_by_cached_key(|e| {
        let d = e.dense();
        (d.iter().filter(|x| !x.is_zero()).count(), std::cmp::Reverse(d))
    });
    out
}

fn set(elements: &[RingElement]) -> String {
    let parts: Vec<String> = listing_order(elements).iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Parses argv (program name first) and runs the command.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    1
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(outcome) => {
            let text = outcome.raw.unwrap_or_else(|| outcome.report.render(outcome.format));
            let _ = write!(stdout, "{text}");
            match outcome.failure {
                Some(msg) => {
                    let _ = writeln!(stderr, "check failed: {msg}");
                    2
                }
                None => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Verify { source, output } => verify(&source, &output),
        Command::Make { quandle, labels, out } => make(&quandle, labels.as_deref(), out.as_deref()),
        Command::Predicates { source, output } => predicates_cmd(&source, &output),
        Command::Idempotents {
            source,
            ring,
            bound,
            budget,
            expect_count,
            families,
            output,
        } => idempotents(&load(&source)?, ring, bound, budget, families, &output).map(|o| {
            let count = o_count(&o.report);
            o.expect("nonzero idempotent count", expect_count, count)
        }),
        Command::MaximalQuandles {
            source,
            ring,
            bound,
            budget,
            max_elements,
            expect_count,
            reduction,
            parametric,
            output,
        } => {
            let named = load(&source)?;
            let mut o = maximal_quandles(&named, ring, bound, budget, max_elements, &output)?;
            let count = o_count(&o.report);
            if let Some(m) = reduction {
                let r = mq_reduction_check(&named.q, m, bound, budget)?;
                o.report
                    .push("reduction_modulus", m)
                    .push_all("reduction_image", r.images.iter().map(|i| set(i)))
                    .push("reduction_surjective", r.surjective());
            }
            if parametric {
                parametric_certificates(&named, &mut o.report)?;
            }
            Ok(o.expect("maximal quandle count", expect_count, count))
        }
        Command::Automorphisms {
            source,
            bound,
            budget,
            expect_count,
            closure,
            expect_group_order,
            relations,
            relation_radius,
            output,
        } => automorphisms(
            &load(&source)?,
            bound,
            budget,
            expect_count,
            closure,
            expect_group_order,
            relations.then_some(relation_radius),
            &output,
        ),
        Command::Commutators {
            source,
            ring,
            element,
            max_len,
            bound,
            budget,
            output,
        } => commutators(
            &load(&source)?,
            ring,
            element.as_deref(),
            max_len,
            bound,
            budget,
            &output,
        ),
        Command::Cw {
            source,
            ring,
            samples,
            seed,
            bound,
            budget,
            output,
        } => cw(&load(&source)?, ring, samples, seed, bound, budget, &output),
        Command::Order {
            quandle,
            side,
            samples,
            window,
            seed,
            output,
        } => order(&quandle, side, samples, window, seed, &output),
        Command::UniqueProducts { quandle, a, b, output } => unique_products_cmd(&quandle, &a, &b, &output),
        Command::ZeroDivisor {
            quandle,
            table,
            ring,
            strategy,
            extended,
            samples,
            support,
            coeff_bound,
            window,
            max_word_len,
            seed,
            output,
        } => {
            if let Some(name) = &quandle {
                match catalog::resolve(name)? {
                    CatalogObject::Integer(iq) => {
                        let r = up_sample_int(&iq, samples, support, coeff_bound, window, seed)?;
                        return Ok(sampling_report(name, r, &output));
                    }
                    CatalogObject::Free(fq) => {
                        let r = up_sample_free(&fq, samples, support, coeff_bound, max_word_len, seed)?;
                        return Ok(sampling_report(name, r, &output));
                    }
                    CatalogObject::Finite(_) => {}
                }
            }
            let named = load(&Source { quandle, table })?;
            zero_divisor(&named, ring, strategy, extended.as_deref(), &output)
        }
        Command::Identities {
            source,
            ring,
            kind,
            identity,
            mode,
            bound,
            trials,
            seed,
            power,
            non_associativity,
            output,
        } => {
            let named = load(&source)?;
            let mode = match mode {
                ModeArg::Basis => CheckMode::Basis,
                ModeArg::Random => CheckMode::Random { bound, trials, seed },
            };
            identities(&named, ring, kind, identity, mode, power, non_associativity, &output)
        }
        Command::LieAnalysis { n, ring, output } => {
            let a = trivial_quandle_lie_analysis(n, ring)?;
            let mut r = Report::new("lie-analysis");
            r.push("n", n)
                .push("ring", ring)
                .push_all("l2_basis", &a.l2_basis)
                .push("l2_rank", a.l2_rank)
                .push("l2_basis_verified", a.l2_basis_verified)
                .push("l2_equals_l3", a.l2_equals_l3)
                .push("l2_squared_zero", a.l2_squared_zero)
                .push(
                    "j2_equals_j",
                    a.j2_equals_j
                        .map_or("not computed (2 is not invertible)".to_string(), |b| b.to_string()),
                );
            Ok(Outcome::ok(r, output.format))
        }
        Command::VerifyCertificate { path, output } => {
            let text = fs::read_to_string(&path)?;
            let mut r = Report::new("verify-certificate");
            r.push("file", path.display());
            match verify_certificates(&text) {
                Ok(certs) => {
                    let mut kinds: std::collections::BTreeMap<String, usize> = Default::default();
                    for c in &certs {
                        *kinds
                            .entry(format!("{} ({}, {})", c.claim.kind(), c.name, c.ring))
                            .or_default() += 1;
                    }
                    r.push("certificates", certs.len())
                        .push_all("kind", kinds.iter().map(|(k, n)| format!("{k}: {n}")))
                        .push("verdict", "accepted");
                    Ok(Outcome::ok(r, output.format))
                }
                Err(e) => {
                    r.push("verdict", "rejected").push("reason", &e);
                    Ok(Outcome::failed(r, output.format, e.to_string()))
                }
            }
        }
        Command::ListCatalog { output } => {
            let mut r = Report::new("list-catalog");
            for e in catalog::entries() {
                let order = e.order().map_or("infinite".to_string(), |n| n.to_string());
                r.push(e.name, format!("order {order}; {}", e.description));
            }
            Ok(Outcome::ok(r, output.format))
        }
    }
}

/// The `count` entry written by the listing commands.
fn o_count(r: &Report) -> usize {
    r.get("count").and_then(|c| c.parse().ok()).unwrap_or(0)
}

fn verify(source: &Source, output: &Output) -> Result<Outcome> {
    let mut r = Report::new("verify");
    let loaded = match (&source.quandle, &source.table) {
        (None, Some(path)) => parse_table_file(&fs::read_to_string(path)?).map(|q| ("table".to_string(), Arc::new(q))),
        _ => load(source).map(|n| (n.name, n.q)),
    };
    match loaded {
        Ok((name, q)) => {
            r.push("quandle", name).push("valid", true).push("order", q.order());
            if q.order() <= 6 {
                r.push("isomorphic_to", catalog::identify(&q).unwrap_or("none in the catalog"));
            }
            Ok(Outcome::ok(r, output.format))
        }
        Err(e @ (Error::Parse(_) | Error::Io(_) | Error::UnknownName(_))) => Err(e),
        Err(e) => {
            r.push("valid", false).push("violation", &e);
            Ok(Outcome::failed(r, output.format, e.to_string()))
        }
    }
}

fn make(name: &str, labels: Option<&str>, out: Option<&Path>) -> Result<Outcome> {
    let mut q = (*catalog::get_finite(name)?).clone();
    if let Some(l) = labels {
        let l: Vec<&str> = l.split_whitespace().collect();
        q = q.with_labels(&l)?;
    }
    let text = write_table_file(&q);
    match out {
        Some(path) => {
            let mut r = Report::new("make");
            r.push("quandle", catalog::canonical_name(name))
                .push("order", q.order());
            write_out(path, &text, &mut r)?;
            Ok(Outcome::ok(r, Format::Text))
        }
        None => {
            let mut o = Outcome::ok(Report::new("make"), Format::Text);
            o.raw = Some(text);
            Ok(o)
        }
    }
}

fn predicates_cmd(source: &Source, output: &Output) -> Result<Outcome> {
    let named = load(source)?;
    let p = predicates(&named.q);
    let mut r = Report::new("predicates");
    r.push("quandle", &named.name)
        .push("order", named.q.order())
        .push("trivial", p.trivial)
        .push("latin", p.latin)
        .push("semi_latin", p.semi_latin)
        .push("involutary", p.involutary)
        .push("commutative", p.commutative)
        .push("strongly_non_commutative", p.strongly_non_commutative)
        .push("connected", p.connected)
        .push(
            "delta_square_zero",
            crate::ring::delta_square_is_zero(&named.q, CoefficientRing::Integers),
        );
    Ok(Outcome::ok(r, output.format))
}

fn idempotents(
    named: &Named,
    ring: CoefficientRing,
    bound: i128,
    budget: u128,
    families: bool,
    output: &Output,
) -> Result<Outcome> {
    let all = match ring {
        CoefficientRing::Integers => idempotents_box(&named.q, bound, budget)?,
        CoefficientRing::IntegersMod(m) => idempotents_modular(&named.q, m, budget)?,
        CoefficientRing::Rationals => {
            return Err(Error::Unsupported("idempotent search needs ring z or zmod:<m>".into()))
        }
    };
    let nonzero: Vec<RingElement> = all.into_iter().filter(|z| !z.is_zero()).collect();
    let nonzero = listing_order(&nonzero);
    let mut r = Report::new("idempotents");
    r.push("quandle", &named.name).push("ring", ring);
    if ring == CoefficientRing::Integers {
        r.push("bound", bound);
    }
    r.push("count", nonzero.len()).push_all("idempotent", &nonzero);
    if families {
        if ring != CoefficientRing::Integers {
            return Err(Error::Unsupported("families are integral".into()));
        }
        let fams = registry(&named.name)?;
        for f in &fams {
            r.push("family", f);
            r.push("family_certificate", verify_family(f, DEFAULT_GRID_RADIUS)?);
        }
        let cov = family_covers_box(&fams, bound, budget)?;
        for z in &nonzero {
            if let Some((_, p)) = cov.covered.iter().find(|(c, _)| c == z) {
                r.push("solved", format!("{z} <- {p}"));
            }
        }
        r.push_all("uncovered", &cov.uncovered)
            .push("family_covers_box", cov.covers());
    }
    if let Some(path) = &output.out {
        let cert = Certificate::new(&named.name, &named.q, ring, Claim::Idempotents(nonzero));
        cert.verify()?;
        write_out(path, &cert.to_text(), &mut r)?;
    }
    Ok(Outcome::ok(r, output.format))
}

fn maximal_quandles(
    named: &Named,
    ring: CoefficientRing,
    bound: i128,
    budget: u128,
    max_elements: usize,
    output: &Output,
) -> Result<Outcome> {
    let candidates = match ring {
        CoefficientRing::Integers => idempotents_box(&named.q, bound, budget)?,
        CoefficientRing::IntegersMod(m) => idempotents_modular(&named.q, m, budget)?,
        CoefficientRing::Rationals => {
            return Err(Error::Unsupported(
                "maximal quandle search needs ring z or zmod:<m>".into(),
            ))
        }
    };
    let mq = maximal_quandles_with_budget(&candidates, max_elements, DEFAULT_NODE_BUDGET)?;
    let mut r = Report::new("maximal-quandles");
    r.push("quandle", &named.name).push("ring", ring);
    if ring == CoefficientRing::Integers {
        r.push("bound", bound);
    }
    r.push("candidates", mq.candidates)
        .push("zero_excluded", mq.zero_excluded)
        .push("count", mq.quandles.len());
    for m in &mq.quandles {
        let tag = m.isomorphism_tag().map_or(String::new(), |t| format!(" ~ {t}"));
        r.push("maximal_quandle", format!("{}{tag}", set(&m.elements)));
    }
    Ok(Outcome::ok(r, output.format))
}

fn parametric_certificates(named: &Named, r: &mut Report) -> Result<()> {
    let q = &named.q;
    if q.same_structure(&FiniteQuandle::dihedral(4)?) {
        let pq = r4_maximal_quandle();
        r.push("parametric_quandle", pq.describe());
        r.push("parametric_certificate", certify_parametric_quandle(&pq, 2)?);
    } else if q.same_structure(&FiniteQuandle::cs4()) {
        for pq in [cs4_n1(), cs4_n2()] {
            r.push("parametric_quandle", pq.describe());
            r.push("parametric_certificate", certify_parametric_quandle(&pq, 2)?);
        }
        for alpha in [-1, 1, 2] {
            r.push(
                "not_extendable",
                certify_not_extendable(q, &cs4_line_part(), &cs4_diagonal_part(), alpha, 2)?,
            );
        }
    } else {
        return Err(Error::Unsupported(
            "parametric quandles are built in for R4 and Cs4".into(),
        ));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn automorphisms(
    named: &Named,
    bound: i128,
    budget: u128,
    expect_count: Option<usize>,
    closure: bool,
    expect_group_order: Option<usize>,
    relation_radius: Option<i128>,
    output: &Output,
) -> Result<Outcome> {
    let s = automorphisms_bounded(&named.q, bound, budget)?;
    let mut r = Report::new("automorphisms");
    r.push("quandle", &named.name)
        .push("summary", s.summary())
        .push("count", s.matrices.len())
        .push_all("matrix", s.matrices.iter().map(|m| m.to_compact()))
        .push("inverse_closed", s.inverse_closed);
    let mut group_order = None;
    if closure {
        match group_order_small(&s.matrices, DEFAULT_GROUP_CAP)? {
            GroupClosure::Finite { elements, .. } => {
                group_order = Some(elements.len());
                r.push("group_order", elements.len());
            }
            GroupClosure::ExceedsCap { cap } => {
                r.push("group_order", format!("more than {cap}"));
            }
        }
    }
    if let Some(radius) = relation_radius {
        let q = &named.q;
        let (gens, rels) = if q.same_structure(&FiniteQuandle::trivial(2)?) {
            (t2_generators(), t2_relation_instances(radius))
        } else if q.same_structure(&FiniteQuandle::dihedral(4)?) {
            (r4_generators(), r4_relations())
        } else {
            return Err(Error::Unsupported("relations are built in for T2 and R4".into()));
        };
        let cert = verify_relations(&gens, &rels)?;
        r.push("relations_checked", cert.checked.len());
        r.push_all("relation", cert.checked.iter().take(8));
    }
    if let Some(path) = &output.out {
        let certs: Vec<Certificate> = s
            .matrices
            .iter()
            .map(|m| {
                Certificate::new(
                    &named.name,
                    &named.q,
                    CoefficientRing::Integers,
                    Claim::Automorphism(m.clone()),
                )
            })
            .collect();
        write_out(path, &write_certificates(&certs), &mut r)?;
    }
    let mut o = Outcome::ok(r, output.format).expect("matrix count", expect_count, s.matrices.len());
    if let Some(e) = expect_group_order {
        match group_order {
            Some(g) => o = o.expect("group order", Some(e), g),
            None if o.failure.is_none() => {
                o.failure = Some(format!(
                    "expected group order {e}, but the closure was not finite or not computed"
                ))
            }
            None => {}
        }
    }
    Ok(o)
}

fn commutators(
    named: &Named,
    ring: CoefficientRing,
    element: Option<&str>,
    max_len: usize,
    bound: i128,
    budget: u128,
    output: &Output,
) -> Result<Outcome> {
    let q = &named.q;
    let span = commutator_subalgebra(q, ring)?;
    let mut r = Report::new("commutators");
    r.push("quandle", &named.name)
        .push("ring", ring)
        .push("closure_rank", span.rank());
    for row in span.rows() {
        r.push("closure_basis", RingElement::from_dense(q, ring, &row)?);
    }
    r.push("contained_in_delta", contained_in_delta(q, ring)?)
        .push("equals_delta", closure_equals_delta(q, ring)?);
    match strongly_noncomm_delta_equality(q) {
        Ok(c) => {
            r.push("delta_equality", c.method)
                .push("delta_witnesses", c.witnesses.len())
                .push("width_bounds", format!("{} <= cw <= {}", c.width_lower, c.width_upper));
        }
        Err(Error::HypothesisFailed(m)) => {
            r.push("delta_equality", format!("not established: {m}"));
        }
        Err(e) => return Err(e),
    }
    if let Some(lit) = element {
        let u = parse_element(q, ring, lit)?;
        let res = cl_exact_small(&u, max_len, bound, budget)?;
        r.push("element", &u).push("commutator_length", &res);
        if let (Some(path), ClSearch::Found(c)) = (&output.out, &res) {
            let cert = Certificate::new(&named.name, q, ring, Claim::Commutator(c.clone()));
            write_out(path, &cert.to_text(), &mut r)?;
        }
    }
    Ok(Outcome::ok(r, output.format))
}

fn cw(
    named: &Named,
    ring: CoefficientRing,
    samples: usize,
    seed: u64,
    bound: i128,
    budget: u128,
    output: &Output,
) -> Result<Outcome> {
    let q = &named.q;
    let mut r = Report::new("cw");
    r.push("quandle", &named.name).push("ring", ring).push("seed", seed);
    if width_one_shape(q).is_some() {
        let c = cw_certificate(q, ring, samples, seed)?;
        let verified = c.witnesses.iter().filter(|w| w.verify()).count();
        r.push("shape", format!("{:?}", c.shape))
            .push("nonzero_commutator", &c.nonzero)
            .push("samples", c.samples)
            .push("verified", verified)
            .push("cw", 1);
        let mut o = Outcome::ok(r, output.format).expect("verified certificates", Some(samples), verified);
        if let Some(path) = &output.out {
            let certs: Vec<Certificate> = c
                .witnesses
                .into_iter()
                .map(|w| Certificate::new(&named.name, q, ring, Claim::Commutator(w)))
                .collect();
            write_out(path, &write_certificates(&certs), &mut o.report)?;
        }
        return Ok(o);
    }
    let w = width_bounds(q, samples, bound, seed, budget)?;
    r.push("delta_equality", w.certificate.method)
        .push(
            "width_bounds",
            format!("{} <= cw <= {}", w.certificate.width_lower, w.certificate.width_upper),
        )
        .push("sampled", w.tried)
        .push("single_commutators", w.single_commutators)
        .push("bound", w.bound);
    Ok(Outcome::ok(r, output.format))
}

fn order(name: &str, side: SideArg, samples: usize, window: i128, seed: u64, output: &Output) -> Result<Outcome> {
    let mut r = Report::new("order");
    r.push("quandle", catalog::canonical_name(name));
    match catalog::resolve(name)? {
        CatalogObject::Finite(q) => {
            for s in side.sides() {
                let found = find_order(&q, s)?;
                r.push(
                    &format!("{s}_order"),
                    found.map_or("none".to_string(), |o| o.display(&q)),
                );
            }
        }
        CatalogObject::Integer(iq) => {
            r.push("order_tested", "natural order of Z").push("seed", seed);
            for s in side.sides() {
                let m = order_monotonicity_sample(&iq, s, samples, window, seed);
                r.push(&format!("{s}_samples"), m.trials)
                    .push(&format!("{s}_violations"), m.violations);
                if let Some((x, y, z)) = m.witness {
                    let (p, q) = match s {
                        Side::Right => (iq.mul(x, z), iq.mul(y, z)),
                        Side::Left => (iq.mul(z, x), iq.mul(z, y)),
                    };
                    r.push(
                        &format!("{s}_witness"),
                        format!("x = {x} < y = {y}, z = {z}: products {p}, {q}"),
                    );
                }
            }
        }
        CatalogObject::Free(_) => return Err(Error::Unsupported("order search on free quandles".into())),
    }
    Ok(Outcome::ok(r, output.format))
}

fn parse_list<T>(s: &str, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    s.split(',').map(|t| f(t.trim())).collect()
}

fn unique_products_cmd(name: &str, a: &str, b: &str, output: &Output) -> Result<Outcome> {
    let mut r = Report::new("unique-products");
    r.push("quandle", catalog::canonical_name(name));
    fn fill<E: Ord + Clone + std::fmt::Debug>(
        r: &mut Report,
        rep: crate::order_zero::UniqueProductReport<E>,
        show: impl Fn(&E) -> String,
    ) {
        let list = |v: &[E]| v.iter().map(&show).collect::<Vec<_>>().join(", ");
        r.push("a", list(&rep.a)).push("b", list(&rep.b));
        for (p, reps) in &rep.products {
            let reps: Vec<String> = reps.iter().map(|(x, y)| format!("{}*{}", show(x), show(y))).collect();
            r.push("product", format!("{} = {}", show(p), reps.join(" = ")));
        }
        r.push("unique", list(&rep.unique))
            .push("up", rep.up)
            .push("tup", rep.tup);
        for (k, w) in [("max_witness", &rep.max_witness), ("min_witness", &rep.min_witness)] {
            let v = w.as_ref().map_or("none".to_string(), |(x, y, p)| {
                format!("{}*{} = {}", show(x), show(y), show(p))
            });
            r.push(k, v);
        }
    }
    match catalog::resolve(name)? {
        CatalogObject::Integer(iq) => {
            let int = |t: &str| {
                t.parse::<i128>()
                    .map_err(|_| Error::Parse(format!("bad integer `{t}`")))
            };
            let rep = unique_products(&iq, &parse_list(a, int)?, &parse_list(b, int)?)?;
            fill(&mut r, rep, |x| x.to_string());
        }
        CatalogObject::Finite(q) => {
            let elem = |t: &str| {
                q.index_of(t)
                    .or_else(|| t.parse::<usize>().ok().filter(|&i| i < q.order()))
                    .ok_or_else(|| Error::Parse(format!("unknown element `{t}`")))
            };
            let rep = unique_products(&*q, &parse_list(a, elem)?, &parse_list(b, elem)?)?;
            fill(&mut r, rep, |&x| q.label(x));
        }
        CatalogObject::Free(_) => return Err(Error::Unsupported("unique-products on free quandles".into())),
    }
    Ok(Outcome::ok(r, output.format))
}

fn sampling_report(name: &str, s: crate::order_zero::NoZeroDivisorReport, output: &Output) -> Outcome {
    let mut r = Report::new("zero-divisor");
    r.push("quandle", catalog::canonical_name(name))
        .push("mode", "sampling")
        .push("trials", s.trials)
        .push("zero_products", s.zero_products)
        .push("unique_product_checks", s.unique_product_checks)
        .push("unique_product_failures", s.unique_product_failures);
    if let Some((u, v)) = &s.first_zero {
        r.push("first_zero", format!("({u}) * ({v})"));
    }
    Outcome::ok(r, output.format)
}

fn zero_divisor(
    named: &Named,
    ring: CoefficientRing,
    strategy: Strategy,
    extended: Option<&str>,
    output: &Output,
) -> Result<Outcome> {
    let q = &named.q;
    let mut r = Report::new("zero-divisor");
    r.push("quandle", &named.name)
        .push("ring", ring)
        .push("strategy", strategy);
    match zero_divisor_witness(q, ring, strategy)? {
        Some(w) => {
            r.push("found_by", w.strategy)
                .push("left", &w.u)
                .push("right", &w.v)
                .push("product", w.u.mul(&w.v)?);
            if let Some(path) = &output.out {
                let cert = Certificate::new(&named.name, q, ring, Claim::ZeroDivisor { left: w.u, right: w.v });
                write_out(path, &cert.to_text(), &mut r)?;
            }
        }
        None => {
            r.push("found_by", "none");
        }
    }
    if let Some(x) = extended {
        let i = q
            .index_of(x)
            .ok_or_else(|| Error::Parse(format!("unknown element `{x}`")))?;
        let (a, b) = extended_ring_witness(q, ring, i)?;
        r.push("extended_witness", format!("({a}) * ({b}) = 0"));
    }
    Ok(Outcome::ok(r, output.format))
}

#[allow(clippy::too_many_arguments)]
fn identities(
    named: &Named,
    ring: CoefficientRing,
    kind: DerivedKind,
    ids: Vec<Identity>,
    mode: CheckMode,
    power: bool,
    non_associativity: bool,
    output: &Output,
) -> Result<Outcome> {
    let alg = DerivedAlgebra::new(&named.q, ring, kind)?;
    let ids = if ids.is_empty() { Identity::ALL.to_vec() } else { ids };
    let mut r = Report::new("identities");
    r.push("quandle", &named.name).push("ring", ring).push("kind", kind);
    for id in ids {
        let rep = check_identity(&alg, id, mode)?;
        let verdict = match (&rep.counterexample, rep.proven()) {
            (Some(_), _) => "fails",
            (None, true) => "holds",
            (None, false) => "no counterexample found",
        };
        r.push(id.name(), format!("{verdict}; {} checks, {}", rep.checked, rep.method));
        if let Some(c) = rep.counterexample {
            let names = ["a", "b", "c"];
            for (n, x) in names.iter().zip(&c.args) {
                r.push(&format!("{}_{n}", id.name()), x);
            }
            r.push(&format!("{}_equation", id.name()), c.equation)
                .push(&format!("{}_lhs", id.name()), &c.lhs)
                .push(&format!("{}_rhs", id.name()), &c.rhs);
        }
    }
    let (bound, trials, seed) = match mode {
        CheckMode::Random { bound, trials, seed } => (bound, trials, seed),
        CheckMode::Basis => (2, 1000, 0),
    };
    if power {
        let p = power_associative_witness(&alg, bound, trials, seed)?;
        r.push("power_associativity", &p);
    }
    if non_associativity {
        let n = non_associativity_report(&named.q, ring, bound, trials, seed)?;
        r.push("non_associativity_failure_found", n.any_failure());
        for rep in &n.identities {
            r.push("non_associativity", rep);
        }
        r.push("non_associativity_power", &n.power);
    }
    Ok(Outcome::ok(r, output.format))
}
