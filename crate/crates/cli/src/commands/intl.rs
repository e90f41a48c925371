use std::collections::BTreeMap;

use clap::Subcommand;
use linftykan::intl::{fill_horn, period_class, random_mc, validate_mc, Horn, MCElement};
use linftykan::linf::LInftyAlgebra;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::docs::{input, kind, resolve, CliError};
use crate::report::{Provenance::Exact, Report};
use crate::RunConfig;

#[derive(Subcommand)]
pub enum IntlCmd {
    /// Checks the Maurer–Cartan equations of a simplex.
    Validate {
        file: String,
        /// Algebra document; defaults to the corpus entry named in the simplex.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// The face opposite vertex `i`.
    Face {
        file: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Fills the horn Λ[m,j] (a horn document, or a simplex whose horn is used).
    FillHorn {
        file: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        j: usize,
        /// A simplex on Δ^m whose own horn must be sent back to it.
        #[arg(long)]
        pin: Option<String>,
        #[arg(long)]
        algebra: Option<String>,
    },
    /// A random simplex of a nilpotent algebra (uses `--seed`).
    Random {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        m: usize,
        /// Polynomial degree of the random coefficients.
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Periods of a simplex with zero boundary, for an algebra abelian in one degree.
    Period {
        file: String,
        #[arg(long)]
        algebra: Option<String>,
    },
}

fn algebra_for(doc: &Value, explicit: Option<&str>, cfg: &RunConfig) -> Result<LInftyAlgebra, CliError> {
    let name = match explicit {
        Some(a) => a.to_string(),
        None => doc
            .get("algebra")
            .and_then(Value::as_str)
            .ok_or_else(|| input("the document names no algebra; pass --algebra"))?
            .to_string(),
    };
    Ok(cfg.algebra(&name)?.algebra)
}

fn horn_from(l: &LInftyAlgebra, doc: &Value, m: usize, j: usize) -> Result<Horn, CliError> {
    match kind(doc) {
        "mc-element" => {
            let x = MCElement::from_json(l, doc)?;
            if x.m != m {
                return Err(input(format!("the simplex has dimension {}, not {m}", x.m)));
            }
            Ok(Horn::restrict(&x, j)?)
        }
        "horn" => {
            let (dm, dj) = (doc.get("m").and_then(Value::as_u64), doc.get("j").and_then(Value::as_u64));
            if dm != Some(m as u64) || dj != Some(j as u64) {
                return Err(input(format!("the horn document is not Λ[{m},{j}]")));
            }
            let obj = doc.get("facets").and_then(Value::as_object).ok_or_else(|| input("horn needs \"facets\""))?;
            let mut facets = BTreeMap::new();
            for (k, f) in obj {
                let i: usize = k.parse().map_err(|_| input(format!("facet key {k:?}")))?;
                facets.insert(i, MCElement::from_json(l, f)?);
            }
            Ok(Horn { m, j, facets })
        }
        other => Err(input(format!("expected a horn or mc-element document, found kind {other:?}"))),
    }
}

pub fn run(cmd: IntlCmd, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        IntlCmd::Validate { file, algebra } => {
            let doc = resolve(&file)?;
            let l = algebra_for(&doc, algebra.as_deref(), cfg)?;
            let x = MCElement::from_json(&l, &doc)?;
            let rep = validate_mc(&l, &x)?;
            let mut r = Report::new("intl validate");
            r.verdict("Maurer–Cartan", rep.holds);
            if let Some((g, res)) = &rep.failure {
                r.value(format!("residual of {g}"), res, Exact);
            }
            Ok(r)
        }
        IntlCmd::Face { file, i, algebra } => {
            let doc = resolve(&file)?;
            let l = algebra_for(&doc, algebra.as_deref(), cfg)?;
            let face = MCElement::from_json(&l, &doc)?.face(i)?;
            let mut r = Report::new("intl face");
            r.verdict("Maurer–Cartan", validate_mc(&l, &face)?.holds);
            r.document(face.to_json(&l));
            Ok(r)
        }
        IntlCmd::FillHorn { file, m, j, pin, algebra } => {
            let doc = resolve(&file)?;
            let l = algebra_for(&doc, algebra.as_deref(), cfg)?;
            let horn = horn_from(&l, &doc, m, j)?;
            for (i, f) in &horn.facets {
                let rep = validate_mc(&l, f)?;
                if !rep.holds {
                    return Err(input(format!("facet {i} is not a Maurer–Cartan simplex: {rep}")));
                }
            }
            let pin = match pin {
                Some(p) => Some(MCElement::from_json(&l, &resolve(&p)?)?),
                None => None,
            };
            let filler = fill_horn(&l, &horn, pin.as_ref())?;
            let mut r = Report::new("intl fill-horn");
            r.verdict("Maurer–Cartan", validate_mc(&l, &filler)?.holds);
            r.verdict("restricts to the horn", Horn::restrict(&filler, j)? == horn);
            if let Some(p) = &pin {
                if Horn::restrict(p, j)? == horn {
                    r.verdict("reproduces the pin", &filler == p);
                }
            }
            r.value("polynomial degree", filler.forms.iter().map(|f| f.poly_degree()).max().unwrap_or(0), Exact);
            r.document(filler.to_json(&l));
            Ok(r)
        }
        IntlCmd::Random { algebra, m, degree } => {
            let l = cfg.algebra(&algebra)?.algebra;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let x = random_mc(&l, m, degree, &mut rng)?;
            let mut r = Report::new("intl random");
            r.verdict("Maurer–Cartan", validate_mc(&l, &x)?.holds);
            r.document(x.to_json(&l));
            Ok(r)
        }
        IntlCmd::Period { file, algebra } => {
            let doc = resolve(&file)?;
            let l = algebra_for(&doc, algebra.as_deref(), cfg)?;
            let x = MCElement::from_json(&l, &doc)?;
            let periods = period_class(&l, &x)?;
            let mut r = Report::new("intl period");
            for (k, p) in periods.iter().enumerate() {
                r.value(format!("period {k}"), p, Exact);
            }
            Ok(r)
        }
    }
}
