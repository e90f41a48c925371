use clap::Subcommand;
use linftykan::homot::{les_assemble, tvf_integrability, BoundaryData, HomotopyGroup};

use crate::docs::{input, resolve, CliError};
use crate::report::{Provenance::Exact, Report};
use crate::RunConfig;

#[derive(Subcommand)]
pub enum HomotCmd {
    /// Homotopy groups π_1 … π_N of the integrated algebra.
    Les {
        #[arg(long)]
        algebra: String,
        /// Homotopy data of the group; defaults to the algebra's `"group"` member.
        #[arg(long)]
        pi_g: Option<String>,
        #[arg(long)]
        up_to: usize,
    },
    /// Whether the n-truncation integrates, i.e. the image of ∂_n is discrete.
    Tvf {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        pi_g: Option<String>,
        #[arg(long)]
        n: usize,
    },
}

fn inputs(algebra: &str, pi_g: Option<&str>, cfg: &RunConfig) -> Result<(Vec<usize>, BoundaryData), CliError> {
    let file = cfg.algebra(algebra)?;
    let data = match pi_g {
        Some(p) => BoundaryData::from_json(&resolve(p)?)?,
        None => file
            .group
            .ok_or_else(|| input(format!("{algebra} carries no group data; pass --pi-g")))?,
    };
    Ok((file.algebra.homology_dims(), data))
}

pub fn run(cmd: HomotCmd, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        HomotCmd::Les { algebra, pi_g, up_to } => {
            let (h, data) = inputs(&algebra, pi_g.as_deref(), cfg)?;
            let mut r = Report::new("homot les");
            for (k, g) in les_assemble(&h, &data, up_to)?.iter().enumerate() {
                match g {
                    HomotopyGroup::Fundamental(name) => r.text(format!("π_{}", k + 1), name),
                    HomotopyGroup::Higher(p) => r.value(format!("π_{}", k + 1), p, Exact),
                };
            }
            Ok(r)
        }
        HomotCmd::Tvf { algebra, pi_g, n } => {
            let (h, data) = inputs(&algebra, pi_g.as_deref(), cfg)?;
            let discrete = tvf_integrability(&h, &data, n)?;
            let mut r = Report::new("homot tvf");
            r.verdict(format!("image of ∂_{n} discrete"), discrete);
            r.note(if discrete {
                format!("τ≤{n} integrates to a Lie {n}-group")
            } else {
                "image not discrete: the truncation is not a manifold".to_string()
            });
            Ok(r)
        }
    }
}
