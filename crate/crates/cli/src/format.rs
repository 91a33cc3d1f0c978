//! The `group-v1` and `rep-v1` JSON file formats.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use irredkit::group::PermutationGroup;
use irredkit::{ComplexMatrix, FiniteGroup, Permutation, Representation, Tolerances, C64};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const GROUP_FORMAT: &str = "group-v1";
pub const REP_FORMAT: &str = "rep-v1";

/// A complex number as `[re, im]`.
pub type JsonComplex = [f64; 2];
/// A matrix as rows of `[re, im]` pairs.
pub type JsonMatrix = Vec<Vec<JsonComplex>>;

/// `{"format":"group-v1","kind":"cayley","order":N,"table":[[..],..]}` or
/// `{"format":"group-v1","kind":"permutation","degree":d,"generators":[[..],..]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub format: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
}

/// Group reference inside a rep file: a path (relative to the rep file) or an
/// inline group document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Path(String),
    Inline(GroupFile),
}

/// `{"format":"rep-v1","dim":n,"by":"generators"|"elements","matrices":[..]}`
/// with optional `"group"` and, for `"by":"generators"`, optional
/// `"generators"` (element indices; defaults to the group's own generators).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub format: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupRef>,
    pub dim: usize,
    pub by: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<usize>>,
    pub matrices: Vec<JsonMatrix>,
}

/// A parsed group together with the element indices of its file generators
/// (input order for permutation files).
#[derive(Debug, Clone)]
pub struct LoadedGroup {
    pub group: Arc<FiniteGroup>,
    pub generators: Vec<usize>,
}

fn deserialize<T: DeserializeOwned>(text: &str, file: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        match inner.classify() {
            serde_json::error::Category::Data => CliError::Schema {
                file: file.to_string(),
                path,
                position: Some((inner.line(), inner.column())),
                message: inner.to_string(),
            },
            _ => CliError::Syntax {
                file: file.to_string(),
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            },
        }
    })?;
    Ok(value)
}

/// Parses a `group-v1` document.
pub fn parse_group(text: &str, file: &str, max_order: usize) -> Result<LoadedGroup, CliError> {
    let doc: GroupFile = deserialize(text, file)?;
    build_group(&doc, file, max_order)
}

pub fn build_group(doc: &GroupFile, file: &str, max_order: usize) -> Result<LoadedGroup, CliError> {
    if doc.format != GROUP_FORMAT {
        return Err(CliError::schema(
            file,
            "format",
            format!("expected \"{GROUP_FORMAT}\""),
        ));
    }
    match doc.kind.as_str() {
        "cayley" => {
            let order = doc
                .order
                .ok_or_else(|| CliError::schema(file, "order", "missing field"))?;
            let table = doc
                .table
                .as_ref()
                .ok_or_else(|| CliError::schema(file, "table", "missing field"))?;
            if order > max_order {
                return Err(CliError::input(
                    file,
                    irredkit::Error::OrderLimitExceeded {
                        limit: max_order,
                        reached: order,
                    },
                ));
            }
            if table.len() != order {
                return Err(CliError::schema(
                    file,
                    "table",
                    format!("expected {order} rows, found {}", table.len()),
                ));
            }
            for (i, row) in table.iter().enumerate() {
                if row.len() != order {
                    return Err(CliError::schema(
                        file,
                        format!("table[{i}]"),
                        format!(
                            "table is not square: expected {order} entries, found {}",
                            row.len()
                        ),
                    ));
                }
                if let Some(j) = row.iter().position(|&x| x >= order) {
                    return Err(CliError::schema(
                        file,
                        format!("table[{i}][{j}]"),
                        "entry out of range",
                    ));
                }
            }
            let group = FiniteGroup::from_cayley(table).map_err(|e| CliError::input(file, e))?;
            let generators = group.generators().to_vec();
            Ok(LoadedGroup {
                group: Arc::new(group),
                generators,
            })
        }
        "permutation" => {
            let degree = doc
                .degree
                .ok_or_else(|| CliError::schema(file, "degree", "missing field"))?;
            let gens = doc
                .generators
                .as_ref()
                .ok_or_else(|| CliError::schema(file, "generators", "missing field"))?;
            let mut perms = Vec::with_capacity(gens.len());
            for (k, images) in gens.iter().enumerate() {
                if images.len() != degree {
                    return Err(CliError::schema(
                        file,
                        format!("generators[{k}]"),
                        format!("expected {degree} images, found {}", images.len()),
                    ));
                }
                let p = Permutation::new(images.clone()).map_err(|e| {
                    CliError::schema(file, format!("generators[{k}]"), e.to_string())
                })?;
                perms.push(p);
            }
            let pg = PermutationGroup::generate(&perms, max_order)
                .map_err(|e| CliError::input(file, e))?;
            Ok(LoadedGroup {
                group: Arc::new(pg.group),
                generators: pg.generator_indices,
            })
        }
        other => Err(CliError::schema(
            file,
            "kind",
            format!("unknown kind \"{other}\", expected \"cayley\" or \"permutation\""),
        )),
    }
}

/// Cayley-table document for a group.
pub fn group_to_file(group: &FiniteGroup) -> GroupFile {
    GroupFile {
        format: GROUP_FORMAT.into(),
        kind: "cayley".into(),
        order: Some(group.order()),
        table: Some(group.table_rows()),
        degree: None,
        generators: None,
    }
}

fn to_c64(z: &JsonComplex) -> C64 {
    C64::new(z[0], z[1])
}

/// `[re, im]` with negative zero normalized.
pub fn json_complex(z: C64) -> JsonComplex {
    [z.re + 0.0, z.im + 0.0]
}

pub fn json_matrix(m: &ComplexMatrix) -> JsonMatrix {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&z| json_complex(z)).collect())
        .collect()
}

fn matrix_from_json(
    m: &JsonMatrix,
    dim: usize,
    file: &str,
    path: &str,
) -> Result<ComplexMatrix, CliError> {
    if m.len() != dim {
        return Err(CliError::schema(
            file,
            path,
            format!("expected {dim} rows, found {}", m.len()),
        ));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for (i, row) in m.iter().enumerate() {
        if row.len() != dim {
            return Err(CliError::schema(
                file,
                format!("{path}[{i}]"),
                format!("expected {dim} entries, found {}", row.len()),
            ));
        }
        data.extend(row.iter().map(to_c64));
    }
    ComplexMatrix::from_vec(dim, dim, data).map_err(|e| CliError::schema(file, path, e.to_string()))
}

/// Parses a `rep-v1` document against `group`. A `"group"` field, when
/// present, must describe the same multiplication table.
pub fn parse_rep(
    text: &str,
    file: &str,
    group: &LoadedGroup,
    max_order: usize,
    tol: &Tolerances,
) -> Result<Representation, CliError> {
    let doc: RepFile = deserialize(text, file)?;
    build_rep(&doc, file, group, max_order, tol)
}

pub fn build_rep(
    doc: &RepFile,
    file: &str,
    group: &LoadedGroup,
    max_order: usize,
    tol: &Tolerances,
) -> Result<Representation, CliError> {
    if doc.format != REP_FORMAT {
        return Err(CliError::schema(
            file,
            "format",
            format!("expected \"{REP_FORMAT}\""),
        ));
    }
    if doc.dim == 0 {
        return Err(CliError::schema(file, "dim", "dimension must be positive"));
    }
    if let Some(r) = &doc.group {
        let declared = match r {
            GroupRef::Inline(g) => build_group(g, &format!("{file} (group)"), max_order)?,
            GroupRef::Path(p) => {
                let path = resolve(file, p);
                let text = read_file(&path)?;
                parse_group(&text, &path.display().to_string(), max_order)?
            }
        };
        if *declared.group != *group.group {
            return Err(CliError::input(file, irredkit::Error::GroupMismatch));
        }
    }
    let matrices = doc
        .matrices
        .iter()
        .enumerate()
        .map(|(k, m)| matrix_from_json(m, doc.dim, file, &format!("matrices[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let g = group.group.clone();
    match doc.by.as_str() {
        "elements" => {
            if matrices.len() != g.order() {
                return Err(CliError::schema(
                    file,
                    "matrices",
                    format!(
                        "expected {} matrices (one per element), found {}",
                        g.order(),
                        matrices.len()
                    ),
                ));
            }
            Representation::new(g, matrices, tol).map_err(|e| CliError::input(file, e))
        }
        "generators" => {
            let gens = doc
                .generators
                .clone()
                .unwrap_or_else(|| group.generators.clone());
            if let Some(k) = gens.iter().position(|&x| x >= g.order()) {
                return Err(CliError::schema(
                    file,
                    format!("generators[{k}]"),
                    "element index out of range",
                ));
            }
            if matrices.len() != gens.len() {
                return Err(CliError::schema(
                    file,
                    "matrices",
                    format!(
                        "expected {} matrices (one per generator), found {}",
                        gens.len(),
                        matrices.len()
                    ),
                ));
            }
            if gens.is_empty() && g.order() == 1 {
                return Ok(Representation::trivial(g, doc.dim));
            }
            Representation::from_generator_images(g, &gens, matrices, tol)
                .map_err(|e| CliError::input(file, e))
        }
        other => Err(CliError::schema(
            file,
            "by",
            format!("unknown value \"{other}\", expected \"generators\" or \"elements\""),
        )),
    }
}

/// Element-table document for a representation.
pub fn rep_to_file(rep: &Representation) -> RepFile {
    RepFile {
        format: REP_FORMAT.into(),
        group: None,
        dim: rep.dim(),
        by: "elements".into(),
        generators: None,
        matrices: rep.matrices().iter().map(json_matrix).collect(),
    }
}

/// Generator-image document for a representation.
pub fn rep_to_generator_file(rep: &Representation, generators: &[usize]) -> RepFile {
    RepFile {
        format: REP_FORMAT.into(),
        group: None,
        dim: rep.dim(),
        by: "generators".into(),
        generators: Some(generators.to_vec()),
        matrices: generators
            .iter()
            .map(|&g| json_matrix(rep.matrix(g)))
            .collect(),
    }
}

fn resolve(rep_file: &str, p: &str) -> PathBuf {
    let p = Path::new(p);
    if p.is_absolute() {
        return p.to_path_buf();
    }
    match Path::new(rep_file).parent() {
        Some(dir) => dir.join(p),
        None => p.to_path_buf(),
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        file: path.display().to_string(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn trivial_cayley() {
        let g = parse_group(
            r#"{"format":"group-v1","kind":"cayley","order":1,"table":[[0]]}"#,
            "t",
            2048,
        )
        .unwrap();
        assert_eq!(g.group.order(), 1);
    }

    #[test]
    fn permutation_s3() {
        let text = r#"{"format":"group-v1","kind":"permutation","degree":3,"generators":[[1,2,0],[1,0,2]]}"#;
        let g = parse_group(text, "s3", 2048).unwrap();
        assert_eq!(g.group.order(), 6);
        assert_eq!(g.generators.len(), 2);
    }

    #[test]
    fn non_square_table_names_table() {
        let text = r#"{"format":"group-v1","kind":"cayley","order":2,"table":[[0,1],[1]]}"#;
        let e = parse_group(text, "bad", 2048).unwrap_err();
        match &e {
            CliError::Schema { path, .. } => assert!(path.starts_with("table")),
            other => panic!("{other:?}"),
        }
        assert_eq!(e.exit_code(), 1);
        assert!(e.to_string().contains("table"));
    }

    #[test]
    fn syntax_and_type_errors_are_positioned() {
        let e = parse_group("{\"format\": \"group-v1\",\n \"kind\": ", "f", 2048).unwrap_err();
        assert!(matches!(e, CliError::Syntax { line: 2, .. }));
        let e = parse_group(
            r#"{"format":"group-v1","kind":"cayley","order":"two","table":[[0]]}"#,
            "f",
            2048,
        )
        .unwrap_err();
        match e {
            CliError::Schema { path, position, .. } => {
                assert_eq!(path, "order");
                assert!(position.is_some());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn group_limits_and_axioms() {
        let text = r#"{"format":"group-v1","kind":"permutation","degree":4,"generators":[[1,2,3,0],[1,0,2,3]]}"#;
        assert_eq!(parse_group(text, "s4", 10).unwrap_err().exit_code(), 3);
        let bad = r#"{"format":"group-v1","kind":"cayley","order":2,"table":[[0,1],[1,1]]}"#;
        assert_eq!(parse_group(bad, "b", 10).unwrap_err().exit_code(), 1);
        let wrong = r#"{"format":"group-v2","kind":"cayley","order":1,"table":[[0]]}"#;
        assert!(matches!(
            parse_group(wrong, "w", 10),
            Err(CliError::Schema { .. })
        ));
    }

    #[test]
    fn reps() {
        let triv = parse_group(
            r#"{"format":"group-v1","kind":"cayley","order":1,"table":[[0]]}"#,
            "t",
            2048,
        )
        .unwrap();
        let r = parse_rep(
            r#"{"format":"rep-v1","dim":1,"by":"elements","matrices":[[[[1,0]]]]}"#,
            "r",
            &triv,
            2048,
            &tol(),
        )
        .unwrap();
        assert_eq!(r.dim(), 1);

        let z2 = parse_group(
            r#"{"format":"group-v1","kind":"cayley","order":2,"table":[[0,1],[1,0]]}"#,
            "z2",
            2048,
        )
        .unwrap();
        let sign = parse_rep(
            r#"{"format":"rep-v1","dim":1,"by":"generators","matrices":[[[[-1,0]]]]}"#,
            "s",
            &z2,
            2048,
            &tol(),
        )
        .unwrap();
        assert_eq!(sign.matrix(1)[(0, 0)], C64::new(-1.0, 0.0));
        let bad = parse_rep(
            r#"{"format":"rep-v1","dim":1,"by":"generators","matrices":[[[[2,0]]]]}"#,
            "s",
            &z2,
            2048,
            &tol(),
        );
        assert!(matches!(
            bad,
            Err(CliError::Input {
                source: irredkit::Error::NotAHomomorphism { .. },
                ..
            })
        ));
        let inline = r#"{"format":"rep-v1","group":{"format":"group-v1","kind":"cayley","order":1,"table":[[0]]},
            "dim":1,"by":"generators","matrices":[[[[-1,0]]]]}"#;
        let e = parse_rep(inline, "s", &z2, 2048, &tol()).unwrap_err();
        assert!(matches!(
            e,
            CliError::Input {
                source: irredkit::Error::GroupMismatch,
                ..
            }
        ));
    }

    #[test]
    fn rep_round_trip() {
        let text = r#"{"format":"group-v1","kind":"permutation","degree":3,"generators":[[1,2,0],[1,0,2]]}"#;
        let g = parse_group(text, "s3", 2048).unwrap();
        let h = 3f64.sqrt() / 2.0;
        let rep = format!(
            r#"{{"format":"rep-v1","dim":2,"by":"generators","matrices":[
                [[[-0.5,0],[{m},0]],[[{h},0],[-0.5,0]]],
                [[[1,0],[0,0]],[[0,0],[-1,0]]]]}}"#,
            m = -h
        );
        let f = parse_rep(&rep, "f", &g, 2048, &tol()).unwrap();
        assert_eq!(f.matrices().len(), 6);
        assert!(f.homomorphism_residual() < 1e-14);
        let out = serde_json::to_string(&rep_to_file(&f)).unwrap();
        let back = parse_rep(&out, "out", &g, 2048, &tol()).unwrap();
        for x in 0..6 {
            assert!(back.matrix(x).max_abs_diff(f.matrix(x)) < 1e-10);
        }
        let gens = serde_json::to_string(&rep_to_generator_file(&f, &g.generators)).unwrap();
        let again = parse_rep(&gens, "gens", &g, 2048, &tol()).unwrap();
        for x in 0..6 {
            assert!(again.matrix(x).max_abs_diff(f.matrix(x)) < 1e-10);
        }
    }

    #[test]
    fn group_round_trip() {
        let text = r#"{"format":"group-v1","kind":"permutation","degree":3,"generators":[[1,2,0],[1,0,2]]}"#;
        let g = parse_group(text, "s3", 2048).unwrap();
        let doc = group_to_file(&g.group);
        let back = parse_group(&serde_json::to_string(&doc).unwrap(), "back", 2048).unwrap();
        assert_eq!(*back.group, *g.group);
    }
}
