use std::fs;
use std::path::Path;

use levinger_core::families::{build, parse_spec_batch, FamilySpec};
use levinger_core::Matrix;

use crate::args::SourceArgs;
use crate::error::{CliError, Result};

/// A matrix to work on, with the family spec it came from when known.
#[derive(Debug, Clone)]
pub struct Input {
    pub label: String,
    pub spec: Option<FamilySpec>,
    pub matrix: Matrix,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::File {
        path: path.display().to_string(),
        source,
    })
}

/// Key-value spec text assembled from the per-family flags.
fn family_text(kind: &str, args: &SourceArgs) -> String {
    let mut text = format!("kind = {kind}\n");
    let mut put = |key: &str, value: Option<String>| {
        if let Some(v) = value {
            text.push_str(&format!("{key} = {v}\n"));
        }
    };
    put("n", args.n.map(|x| x.to_string()));
    for (key, value) in [
        ("a", args.a),
        ("b", args.b),
        ("c", args.c),
        ("d", args.d),
        ("u", args.u),
        ("v", args.v),
        ("w", args.w),
        ("h", args.h),
    ] {
        put(key, value.map(|x| format!("{x:?}")));
    }
    put("weights", args.weights.clone());
    put("cycle", args.cycle.clone());
    text
}

fn from_spec(spec: FamilySpec) -> Result<Input> {
    spec.validate()?;
    let matrix = build(&spec)?;
    Ok(Input {
        label: spec.kind().to_string(),
        spec: Some(spec),
        matrix,
    })
}

/// Resolves the source flags into one or more matrices.
pub fn resolve(args: &SourceArgs) -> Result<Vec<Input>> {
    let given = [args.family.is_some(), args.matrix.is_some(), args.spec.is_some()];
    if given.iter().filter(|g| **g).count() != 1 {
        return Err(CliError::Usage(
            "give exactly one of --family, --matrix, --spec".into(),
        ));
    }
    if let Some(kind) = &args.family {
        let spec: FamilySpec = family_text(kind, args).parse()?;
        return Ok(vec![from_spec(spec)?]);
    }
    if let Some(path) = &args.matrix {
        let matrix: Matrix = read(path)?.parse()?;
        return Ok(vec![Input {
            label: path.display().to_string(),
            spec: None,
            matrix,
        }]);
    }
    let path = args.spec.as_ref().expect("one source is set");
    let specs = parse_spec_batch(&read(path)?)?;
    if specs.is_empty() {
        return Err(CliError::Usage(format!("{} holds no specs", path.display())));
    }
    specs.into_iter().map(from_spec).collect()
}

/// Like [`resolve`] but insists on a single matrix.
pub fn resolve_one(args: &SourceArgs) -> Result<Input> {
    let mut inputs = resolve(args)?;
    if inputs.len() != 1 {
        return Err(CliError::Usage(format!(
            "expected one matrix, the spec file holds {}",
            inputs.len()
        )));
    }
    Ok(inputs.remove(0))
}
