use std::path::PathBuf;

use clap::Subcommand;

use crate::corpus::{builtin, dir, load, render};
use crate::docs::{input, kind, AlgebraFile, CliError, ComplexDoc, TetrahedronDoc};
use crate::report::{Provenance::Exact, Report};
use crate::RunConfig;
use linftykan::homot::BoundaryData;
use linftykan::simpset::{CoherentTwoGroup, FinSimplicialSet};
use serde_json::Value;

#[derive(Subcommand)]
pub enum CorpusCmd {
    /// Names and kinds of the bundled documents.
    List,
    /// Prints one document.
    Show { name: String },
    /// Parses every document and checks that writing it back reproduces it.
    Check,
    /// Writes the generated corpus to a directory.
    Export { dir: PathBuf },
}

/// Parse then serialize with the loader for the document's kind.
pub fn reserialize(v: &Value) -> Result<Value, CliError> {
    Ok(match kind(v) {
        "linf" => AlgebraFile::from_json(v)?.to_json(),
        "boundary-data" => BoundaryData::from_json(v)?.to_json(),
        "simplicial-set" => FinSimplicialSet::from_json(v)?.to_json(),
        "two-group" => CoherentTwoGroup::from_json(v)?.to_json(),
        "complex" => serde_json::to_value(crate::docs::typed::<ComplexDoc>(v, "complex")?).expect("serializes"),
        "bundle-tetrahedron" => {
            serde_json::to_value(crate::docs::typed::<TetrahedronDoc>(v, "bundle-tetrahedron")?).expect("serializes")
        }
        "form" => crate::docs::form_json(&crate::docs::form(v)?),
        "mc-element" => {
            let name = v.get("algebra").and_then(Value::as_str).ok_or_else(|| input("simplex names no algebra"))?;
            let l = AlgebraFile::load(name)?.algebra;
            linftykan::intl::MCElement::from_json(&l, v)?.to_json(&l)
        }
        other => return Err(input(format!("unknown document kind {other:?}"))),
    })
}

pub fn run(cmd: CorpusCmd, _cfg: &RunConfig) -> Result<Report, CliError> {
    let mut r = Report::new("corpus");
    match cmd {
        CorpusCmd::List => {
            r.text("directory", dir().display());
            for (name, v) in load()? {
                r.text(name, kind(&v));
            }
        }
        CorpusCmd::Show { name } => {
            let v = crate::docs::resolve(&name)?;
            r.document(v);
        }
        CorpusCmd::Check => {
            let entries = load()?;
            r.value("documents", entries.len(), Exact);
            for (name, v) in &entries {
                let same = reserialize(v).map(|w| render(&w) == render(v));
                match same {
                    Ok(ok) => r.verdict(format!("{name} round trip"), ok),
                    Err(e) => r.verdict(format!("{name} round trip"), false).note(format!("  {e}")),
                };
            }
        }
        CorpusCmd::Export { dir } => {
            std::fs::create_dir_all(&dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
            for (name, v) in builtin() {
                let path = dir.join(format!("{name}.json"));
                std::fs::write(&path, render(&v)).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
                r.text("wrote", path.display());
            }
        }
    }
    Ok(r)
}
