use clap::Subcommand;
use linftykan::simpset::{find_collapse, nerve_2group, skeletal_equivalent, two_group_from_kan, CoherentTwoGroup, FinSimplicialSet};

use super::Mode;
use crate::docs::{kind, resolve, typed, CliError, ComplexDoc};
use crate::report::{Provenance::Exact, Report};
use crate::RunConfig;

#[derive(Subcommand)]
pub enum SimpsetCmd {
    /// Exhaustive Kan check up to a dimension (default: the top dimension).
    Kan {
        file: String,
        #[arg(long)]
        up_to: Option<usize>,
        /// Also require unique fillers in dimensions above this.
        #[arg(long)]
        unique_above: Option<usize>,
    },
    /// The n-th homotopy group of a reduced Kan set.
    Pi {
        file: String,
        #[arg(long)]
        n: usize,
    },
    /// Postnikov truncation (`le`: homotopy classes rel boundary, `lt`: skeleton restriction).
    Truncate {
        file: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Nerve of a coherent 2-group, its filler conditions and the round trip.
    Nerve2 {
        file: String,
        #[arg(long, default_value_t = 3)]
        top: usize,
        /// Print the nerve as a document.
        #[arg(long)]
        emit: bool,
    },
    /// Searches (or replays) a collapse of a subcomplex of a simplex.
    Collapse { file: String },
}

fn counts(r: &mut Report, x: &FinSimplicialSet) {
    for m in 0..=x.top() {
        r.value(format!("|X_{m}|"), x.count(m), Exact);
    }
}

pub fn run(cmd: SimpsetCmd, _cfg: &RunConfig) -> Result<Report, CliError> {
    // A two-group document stands for its nerve (to dimension 4).
    let load = |f: &str| -> Result<FinSimplicialSet, CliError> {
        let v = resolve(f)?;
        if kind(&v) == "two-group" {
            return Ok(nerve_2group(&CoherentTwoGroup::from_json(&v)?, 4)?);
        }
        Ok(FinSimplicialSet::from_json(&v)?)
    };
    match cmd {
        SimpsetCmd::Kan { file, up_to, unique_above } => {
            let x = load(&file)?;
            let up_to = up_to.unwrap_or(x.top());
            let rep = x.is_kan(up_to)?;
            let mut r = Report::new("simpset kan");
            r.text("set", &x.name);
            r.verdict(format!("Kan up to dimension {up_to}"), rep.kan);
            if let Some((m, j, facets)) = &rep.counterexample {
                let labels: Vec<&str> = facets.iter().map(|&f| x.labels[m - 1][f].as_str()).collect();
                r.text(format!("unfillable horn Λ[{m},{j}]"), format!("facets {labels:?}"));
            }
            if let Some(n) = unique_above {
                let unique = x.unique_fillers_above(n, up_to)?;
                r.verdict(format!("unique fillers above {n}"), unique.is_ok());
                if let Err(e) = unique {
                    r.note(e.to_string());
                }
            }
            Ok(r)
        }
        SimpsetCmd::Pi { file, n } => {
            let x = load(&file)?;
            let g = x.pi_n(n)?;
            let mut r = Report::new("simpset pi");
            r.value(format!("π_{n}"), &g, Exact).value("order", g.order(), Exact);
            r.text("abelian", g.is_abelian());
            Ok(r)
        }
        SimpsetCmd::Truncate { file, n, mode } => {
            let x = load(&file)?;
            let t = match mode {
                Mode::Le => x.truncate_at_most(n)?,
                Mode::Lt => x.truncate_below(n)?,
            };
            let mut r = Report::new("simpset truncate");
            counts(&mut r, &t);
            r.document(t.to_json());
            Ok(r)
        }
        SimpsetCmd::Nerve2 { file, top, emit } => {
            let t = CoherentTwoGroup::from_json(&resolve(&file)?)?;
            let x = nerve_2group(&t, top)?;
            let mut r = Report::new("simpset nerve2");
            counts(&mut r, &x);
            r.verdict("Kan", x.is_kan(x.top())?.kan);
            r.verdict("unique fillers above 2", x.unique_fillers_above(2, x.top())?.is_ok());
            let back = two_group_from_kan(&x)?;
            r.verdict("round trip equivalent", skeletal_equivalent(&t, &back)?);
            if emit {
                r.document(x.to_json());
            }
            Ok(r)
        }
        SimpsetCmd::Collapse { file } => {
            let doc: ComplexDoc = typed(&resolve(&file)?, "complex")?;
            let found = find_collapse(doc.n, &doc.simplices)?;
            let mut r = Report::new("simpset collapse");
            r.verdict("collapsible", found.is_some());
            if let Some(cert) = &doc.collapse {
                r.verdict("bundled certificate replays", cert.verify(&doc.simplices));
            }
            if let Some(c) = found {
                r.value("start vertex", c.start, Exact);
                for s in &c.steps {
                    let (k, j) = s.horn();
                    r.text(format!("fill Λ[{k},{j}]"), format!("{:?}", s.simplex));
                }
            }
            Ok(r)
        }
    }
}
