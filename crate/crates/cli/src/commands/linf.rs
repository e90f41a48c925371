use clap::Subcommand;
use linftykan::linf::{build_end_example, truncate_linf, TruncationMode};
use linftykan::Scalar;

use super::Mode;
use crate::docs::{AlgebraFile, CliError};
use crate::report::{Provenance::Exact, Report};
use crate::RunConfig;

#[derive(Subcommand)]
pub enum LinfCmd {
    /// Verifies δ² = 0 on the Chevalley–Eilenberg algebra; lists every nonzero term otherwise.
    Check { file: String },
    /// Prints the Chevalley–Eilenberg differential of every generator.
    Ce { file: String },
    /// Dimensions of the homology of ℓ₁.
    Homology { file: String },
    /// Nilpotency and class of the lower central series.
    Nilpotent { file: String },
    /// Postnikov truncation; emits the truncated algebra.
    Truncate {
        file: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// The quotient of two string algebras by the line (p, q) in degree 1.
    End {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
}

pub fn run(cmd: LinfCmd, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        LinfCmd::Check { file } => {
            let l = cfg.algebra(&file)?.algebra;
            let mut r = Report::new("linf check");
            r.text("algebra", &l.name).text("scalars", l.field());
            let sq = l.ce_square_zero();
            r.verdict("δ²=0", sq.holds);
            r.value("nonzero terms of δ²", sq.violations.len(), Exact);
            for (g, mono, c) in &sq.violations {
                r.value(format!("δ²{g} term {mono}"), c, Exact);
            }
            Ok(r)
        }
        LinfCmd::Ce { file } => {
            let l = cfg.algebra(&file)?.algebra;
            let ce = l.ce();
            let mut r = Report::new("linf ce");
            for g in 0..ce.len() {
                let p = ce.differential(g);
                if p.is_zero() {
                    r.value(format!("δ{}", ce.label(g)), 0, Exact);
                }
                for (m, c) in &p.terms {
                    r.value(format!("δ{} term {}", ce.label(g), ce.render_monomial(m)), c, Exact);
                }
            }
            Ok(r)
        }
        LinfCmd::Homology { file } => {
            let l = cfg.algebra(&file)?.algebra;
            let mut r = Report::new("linf homology");
            for (d, h) in l.homology_dims().iter().enumerate() {
                r.value(format!("dim H_{d}"), h, Exact);
            }
            Ok(r)
        }
        LinfCmd::Nilpotent { file } => {
            let l = cfg.algebra(&file)?.algebra;
            let (nil, class) = l.is_nilpotent();
            let mut r = Report::new("linf nilpotent");
            r.verdict("nilpotent", nil);
            if let Some(c) = class {
                r.value("class", c, Exact);
            }
            Ok(r)
        }
        LinfCmd::Truncate { file, n, mode } => {
            let l = cfg.algebra(&file)?.algebra;
            let mode = match mode {
                Mode::Le => TruncationMode::AtMost,
                Mode::Lt => TruncationMode::Below,
            };
            let t = truncate_linf(&l, n, mode)?;
            let mut r = Report::new("linf truncate");
            r.verdict("δ²=0", t.algebra.ce_square_zero().holds);
            for (d, h) in t.algebra.homology_dims().iter().enumerate() {
                r.value(format!("dim H_{d}"), h, Exact);
            }
            r.document(AlgebraFile { algebra: t.algebra, group: None }.to_json());
            Ok(r)
        }
        LinfCmd::End { p, q } => {
            let (p, q): (Scalar, Scalar) = (p.parse()?, q.parse()?);
            let l = build_end_example(&p, &q)?;
            let mut r = Report::new("linf end");
            r.verdict("δ²=0", l.ce_square_zero().holds);
            r.document(AlgebraFile { algebra: l, group: None }.to_json());
            Ok(r)
        }
    }
}
