use clap::Subcommand;
use linftykan::stringmod::{calibrate, cartan_period, cocycle_check, BundleTwoSimplex, SU2Map, DEFAULT_ORDER, PAIRING_SCALE};

use crate::docs::{resolve, typed, CliError, TetrahedronDoc};
use crate::report::{Provenance::Quadrature, Report};
use crate::RunConfig;

/// Default tolerance of numeric verdicts.
const TOLERANCE: f64 = 0.01;

#[derive(Subcommand)]
pub enum StringCmd {
    /// Period of the Cartan 3-form over a built-in map Δ³ → SU(2).
    Period {
        /// `constant`, `degree1`, `degree1-reversed` or `concat-K`.
        #[arg(long, default_value = "degree1")]
        map: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Defect of the bundle 3-simplex condition for a tetrahedron document.
    Cocycle {
        file: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Integral of the normalized Cartan 3-form over all of SU(2).
    Calibrate {
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
}

pub fn run(cmd: StringCmd, cfg: &RunConfig) -> Result<Report, CliError> {
    let tol = cfg.tolerance_or(TOLERANCE);
    match cmd {
        StringCmd::Period { map, order } => {
            let f = SU2Map::named(&map)?;
            let p = cartan_period(&f, order)?;
            let mut r = Report::new("string period");
            r.text("map", &map);
            r.value("period", format!("{p:.9}"), Quadrature { order });
            r.value("nearest integer", p.round(), Quadrature { order });
            r.verdict(format!("integral within {tol}"), (p - p.round()).abs() < tol);
            Ok(r)
        }
        StringCmd::Cocycle { file, order } => {
            let doc: TetrahedronDoc = typed(&resolve(&file)?, "bundle-tetrahedron")?;
            let f = SU2Map::named(&doc.map)?;
            let faces = [0, 1, 2, 3].map(|i| BundleTwoSimplex::face_of(&f, i, doc.b[i]));
            let [a, b, c, d] = faces;
            let defect = cocycle_check(&[a?, b?, c?, d?], &f, order)?;
            let mut r = Report::new("string cocycle");
            r.text("map", &doc.map);
            r.value("defect", format!("{defect:.3e}"), Quadrature { order });
            r.verdict(format!("defect below {tol}"), defect < tol);
            Ok(r)
        }
        StringCmd::Calibrate { order } => {
            let total = PAIRING_SCALE / calibrate(order)?;
            let mut r = Report::new("string calibrate");
            r.value("∫_SU(2) η", format!("{total:.9}"), Quadrature { order });
            r.verdict(format!("equals 1 within {tol}"), (total - 1.0).abs() < tol);
            Ok(r)
        }
    }
}
