use clap::Subcommand;
use linftykan::forms::PolyMap;

use crate::docs::{form, form_json, resolve, CliError};
use crate::report::{Provenance::Exact, Report};
use crate::RunConfig;

#[derive(Subcommand)]
pub enum FormsCmd {
    /// Exterior derivative.
    D { file: String },
    /// Wedge product of two forms on the same simplex.
    Wedge { left: String, right: String },
    /// Restriction to the face opposite vertex `i`.
    Face {
        file: String,
        #[arg(long)]
        i: usize,
    },
    /// Integral of a top-degree form over its simplex.
    Period { file: String },
}

pub fn run(cmd: FormsCmd, _cfg: &RunConfig) -> Result<Report, CliError> {
    let load = |arg: &str| form(&resolve(arg)?);
    let mut r = Report::new("forms");
    match cmd {
        FormsCmd::D { file } => {
            let f = load(&file)?;
            let df = f.d();
            r.verdict("d²=0", df.d().is_zero());
            r.value("d", &df, Exact).document(form_json(&df));
        }
        FormsCmd::Wedge { left, right } => {
            let (a, b) = (load(&left)?, load(&right)?);
            if a.dim() != b.dim() {
                return Err(crate::docs::input(format!("forms live on Δ^{} and Δ^{}", a.dim(), b.dim())));
            }
            let w = a.wedge(&b);
            r.verdict("Leibniz", w.d() == &a.d().wedge(&b) + &sign(&a).wedge(&b.d()));
            r.value("wedge", &w, Exact).document(form_json(&w));
        }
        FormsCmd::Face { file, i } => {
            let f = load(&file)?;
            let face = f.pullback(&PolyMap::face(f.dim(), i)?)?;
            r.value(format!("face {i}"), &face, Exact).document(form_json(&face));
        }
        FormsCmd::Period { file } => {
            let f = load(&file)?;
            r.value("period", f.simplex_period()?, Exact);
        }
    }
    Ok(r)
}

/// `(−1)^k a` on the degree-`k` parts, the sign in the Leibniz rule.
fn sign(a: &linftykan::forms::PolyForm) -> linftykan::forms::PolyForm {
    let mut out = linftykan::forms::PolyForm::zero(a.dim());
    for k in 0..=a.dim() {
        let part = a.homogeneous_part(k);
        out = if k % 2 == 0 { &out + &part } else { &out - &part };
    }
    out
}
