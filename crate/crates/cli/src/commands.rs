use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use irredkit::characters::{
    character, character_gram, character_table, multiplicities, project_class_function,
    reconstruct_class_function, ClassFunction,
};
use irredkit::cmatrix::svd;
use irredkit::decompose::{discover_irreps, fine_decomposition, matrix_unit_projectors, IrrepSet};
use irredkit::l2::{inversion_intertwiner, right_regular, unitarize};
use irredkit::random::{random_matrix, rng};
use irredkit::{ComplexMatrix, FiniteGroup, Representation, Tolerances, C64};
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;
use crate::format::{
    self, group_to_file, json_complex, json_matrix, rep_to_file, rep_to_generator_file, GroupFile,
    JsonComplex, JsonMatrix, LoadedGroup, RepFile,
};
use crate::report::{format_complex, Table, VerificationReport};

/// Settings shared by every command.
pub struct Context {
    pub seed: u64,
    pub tol: Tolerances,
    pub max_order: usize,
}

/// What a command produced: the payload, residuals, an optional table view
/// and whether any verification failed.
pub struct CommandOutput {
    pub payload: Value,
    pub max_residuals: BTreeMap<String, f64>,
    pub table: Option<Table>,
    pub failed: Vec<String>,
}

impl CommandOutput {
    fn new(payload: impl Serialize) -> Self {
        CommandOutput {
            payload: serde_json::to_value(payload).expect("payloads serialize"),
            max_residuals: BTreeMap::new(),
            table: None,
            failed: Vec::new(),
        }
    }

    fn residual(mut self, name: &str, value: f64) -> Self {
        self.max_residuals.insert(name.into(), value);
        self
    }
}

fn load_group(path: &Path, ctx: &Context) -> Result<LoadedGroup, CliError> {
    let text = format::read_file(path)?;
    format::parse_group(&text, &path.display().to_string(), ctx.max_order)
}

fn load_rep(path: &Path, group: &LoadedGroup, ctx: &Context) -> Result<Representation, CliError> {
    let text = format::read_file(path)?;
    format::parse_rep(
        &text,
        &path.display().to_string(),
        group,
        ctx.max_order,
        &ctx.tol,
    )
}

fn discover(group: &Arc<FiniteGroup>, ctx: &Context) -> Result<IrrepSet, CliError> {
    discover_irreps(group, ctx.seed, ctx.max_order, &ctx.tol)
        .map_err(|e| CliError::numerical("irrep discovery", e))
}

fn num<T>(what: &str, r: irredkit::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::numerical(what, e))
}

#[derive(Serialize)]
struct GroupInfo {
    order: usize,
    class_count: usize,
    class_sizes: Vec<usize>,
    class_representatives: Vec<usize>,
    element_orders: Vec<usize>,
    generators: Vec<usize>,
    abelian: bool,
}

pub fn group_info(path: &Path, ctx: &Context) -> Result<CommandOutput, CliError> {
    let g = load_group(path, ctx)?;
    let cls = g.group.classes();
    Ok(CommandOutput::new(GroupInfo {
        order: g.group.order(),
        class_count: cls.len(),
        class_sizes: cls.sizes().to_vec(),
        class_representatives: cls.representatives().to_vec(),
        element_orders: (0..g.group.order())
            .map(|x| g.group.element_order(x))
            .collect(),
        generators: g.generators.clone(),
        abelian: g.group.is_abelian(),
    }))
}

#[derive(Serialize)]
struct IrrepEntry {
    index: usize,
    dim: usize,
    character: Vec<JsonComplex>,
    representation: RepFile,
}

#[derive(Serialize)]
struct IrrepsPayload {
    order: usize,
    m: usize,
    dims: Vec<usize>,
    sum_of_squares: usize,
    class_sizes: Vec<usize>,
    irreps: Vec<IrrepEntry>,
}

fn set_residuals(set: &IrrepSet) -> (f64, f64) {
    let hom = set
        .irreps()
        .iter()
        .map(Representation::homomorphism_residual)
        .fold(0.0, f64::max);
    let uni = set
        .irreps()
        .iter()
        .map(Representation::unitarity_residual)
        .fold(0.0, f64::max);
    (hom, uni)
}

pub fn irreps(path: &Path, ctx: &Context) -> Result<CommandOutput, CliError> {
    let g = load_group(path, ctx)?;
    let set = discover(&g.group, ctx)?;
    let dims = set.dims();
    let irreps = set
        .irreps()
        .iter()
        .zip(set.characters())
        .enumerate()
        .map(|(index, (f, chi))| IrrepEntry {
            index,
            dim: f.dim(),
            character: chi.values().iter().map(|&z| json_complex(z)).collect(),
            representation: rep_to_generator_file(f, &g.generators),
        })
        .collect();
    let (hom, uni) = set_residuals(&set);
    let gram = num("character table", character_gram(set.characters()))?;
    let orth = gram.max_abs_diff(&ComplexMatrix::identity(set.len()));
    Ok(CommandOutput::new(IrrepsPayload {
        order: g.group.order(),
        m: set.len(),
        sum_of_squares: dims.iter().map(|n| n * n).sum(),
        dims,
        class_sizes: g.group.classes().sizes().to_vec(),
        irreps,
    })
    .residual("homomorphism", hom)
    .residual("unitarity", uni)
    .residual("character_orthonormality", orth))
}

#[derive(Serialize)]
struct TablePayload {
    class_representatives: Vec<usize>,
    class_sizes: Vec<usize>,
    dims: Vec<usize>,
    rows: Vec<Vec<JsonComplex>>,
}

pub fn chartable(path: &Path, ctx: &Context) -> Result<CommandOutput, CliError> {
    let g = load_group(path, ctx)?;
    let set = discover(&g.group, ctx)?;
    let t = num("character table", character_table(&set, &ctx.tol))?;
    let m = t.len();
    let rows: Vec<Vec<JsonComplex>> = (0..m)
        .map(|r| t.values.row(r).iter().map(|&z| json_complex(z)).collect())
        .collect();
    let mut header = vec!["irrep".to_string(), "dim".to_string()];
    header.extend(
        t.class_representatives
            .iter()
            .zip(&t.class_sizes)
            .map(|(rep, size)| format!("class{rep}[{size}]")),
    );
    let table = Table {
        header,
        rows: (0..m)
            .map(|r| {
                let mut row = vec![r.to_string(), t.dims[r].to_string()];
                row.extend(t.values.row(r).iter().map(|&z| format_complex(z)));
                row
            })
            .collect(),
    };
    let mut out = CommandOutput::new(TablePayload {
        class_representatives: t.class_representatives.clone(),
        class_sizes: t.class_sizes.clone(),
        dims: t.dims.clone(),
        rows,
    })
    .residual("character_orthonormality", t.orthonormality_residual);
    out.table = Some(table);
    Ok(out)
}

#[derive(Serialize)]
struct BlockEntry {
    irrep: usize,
    copy: usize,
    offset: usize,
    dim: usize,
}

#[derive(Serialize)]
struct DecomposePayload {
    dim: usize,
    irrep_dims: Vec<usize>,
    multiplicities: Vec<usize>,
    blocks: Vec<BlockEntry>,
    adapted_basis: JsonMatrix,
}

pub fn decompose(group: &Path, rep: &Path, ctx: &Context) -> Result<CommandOutput, CliError> {
    let g = load_group(group, ctx)?;
    let phi = load_rep(rep, &g, ctx)?;
    let set = discover(&g.group, ctx)?;
    let d = num("decomposition", fine_decomposition(&phi, &set, &ctx.tol))?;
    let sum = d
        .isotypic_projectors
        .iter()
        .fold(ComplexMatrix::zeros(phi.dim(), phi.dim()), |acc, p| {
            &acc + p
        });
    let unity = sum.relative_distance(&ComplexMatrix::identity(phi.dim()));
    Ok(CommandOutput::new(DecomposePayload {
        dim: phi.dim(),
        irrep_dims: set.dims(),
        multiplicities: d.multiplicities.clone(),
        blocks: d
            .blocks
            .iter()
            .map(|b| BlockEntry {
                irrep: b.irrep,
                copy: b.copy,
                offset: b.offset,
                dim: b.dim,
            })
            .collect(),
        adapted_basis: json_matrix(&d.adapted_basis),
    })
    .residual("block", d.max_block_residual)
    .residual("partition_of_unity", unity))
}

#[derive(Serialize)]
struct UnitarizePayload {
    representation: RepFile,
    similarity: JsonMatrix,
}

pub fn unitarize_cmd(group: &Path, rep: &Path, ctx: &Context) -> Result<CommandOutput, CliError> {
    let g = load_group(group, ctx)?;
    let phi = load_rep(rep, &g, ctx)?;
    let (h, s) = num("unitarization", unitarize(&phi, &ctx.tol))?;
    let residual = h.unitarity_residual();
    Ok(CommandOutput::new(UnitarizePayload {
        representation: rep_to_file(&h),
        similarity: json_matrix(&s),
    })
    .residual("unitarity", residual)
    .residual("homomorphism", h.homomorphism_residual()))
}

#[derive(Serialize)]
struct RepPayload {
    dim: usize,
    character: Vec<JsonComplex>,
    representation: RepFile,
}

fn rep_payload(rep: &Representation, ctx: &Context) -> Result<CommandOutput, CliError> {
    let chi = num("character", character(rep, &ctx.tol))?;
    Ok(CommandOutput::new(RepPayload {
        dim: rep.dim(),
        character: chi.values().iter().map(|&z| json_complex(z)).collect(),
        representation: rep_to_file(rep),
    })
    .residual("homomorphism", rep.homomorphism_residual()))
}

pub fn tensor(
    group: &Path,
    left: &Path,
    right: &Path,
    ctx: &Context,
) -> Result<CommandOutput, CliError> {
    let g = load_group(group, ctx)?;
    let a = load_rep(left, &g, ctx)?;
    let b = load_rep(right, &g, ctx)?;
    let t = a.tensor(&b).map_err(|e| CliError::input("tensor", e))?;
    rep_payload(&t, ctx)
}

pub fn dsum(
    group: &Path,
    left: &Path,
    right: &Path,
    ctx: &Context,
) -> Result<CommandOutput, CliError> {
    let g = load_group(group, ctx)?;
    let a = load_rep(left, &g, ctx)?;
    let b = load_rep(right, &g, ctx)?;
    let s = a
        .direct_sum(&b)
        .map_err(|e| CliError::input("direct sum", e))?;
    rep_payload(&s, ctx)
}

#[derive(Serialize)]
struct ProductPayload {
    order: usize,
    class_count: usize,
    generators: Vec<usize>,
    group: GroupFile,
}

pub fn product_group(left: &Path, right: &Path, ctx: &Context) -> Result<CommandOutput, CliError> {
    let a = load_group(left, ctx)?;
    let b = load_group(right, ctx)?;
    let p = FiniteGroup::direct_product(&a.group, &b.group, ctx.max_order)
        .map_err(|e| CliError::input("direct product", e))?;
    Ok(CommandOutput::new(ProductPayload {
        order: p.order(),
        class_count: p.class_count(),
        generators: p.generators().to_vec(),
        group: group_to_file(&p),
    }))
}

/// Largest order for which `verify` builds the regular representation,
/// whose `N` matrices of size `N × N` dominate memory.
pub const REGULAR_CHECK_LIMIT: usize = 128;

fn rel(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.distance(b) / b.frobenius_norm().max(1.0)
}

/// Columns are the matrix-element functions `a ↦ f_r(a)[i][j]`, ordered by
/// `(r, i, j)`.
fn matrix_elements(set: &IrrepSet) -> ComplexMatrix {
    let n = set.group().order();
    let mut cols = Vec::new();
    for f in set.irreps() {
        for i in 0..f.dim() {
            for j in 0..f.dim() {
                cols.push((0..n).map(|a| f.matrix(a)[(i, j)]).collect::<Vec<_>>());
            }
        }
    }
    ComplexMatrix::from_columns(n, &cols)
}

/// Runs the invariant suite on the discovered irreps of a group.
pub fn verify(path: &Path, ctx: &Context) -> Result<CommandOutput, CliError> {
    let g = load_group(path, ctx)?;
    let group = &g.group;
    let tol = &ctx.tol;
    let set = discover(group, ctx)?;
    let n = group.order();
    let nf = n as f64;
    let mut report = VerificationReport::default();

    let dims = set.dims();
    let squares: usize = dims.iter().map(|d| d * d).sum();
    let count_gap =
        (set.len() as f64 - group.class_count() as f64).abs() + (squares as f64 - nf).abs();
    report.push("completeness", count_gap, 0.0);

    let (hom, uni) = set_residuals(&set);
    report.push("homomorphism", hom, tol.eq);
    report.push("unitarity", uni, tol.eq);

    // (1/N) Σ_a conj(f_r(a)[i][j]) f_s(a)[k][l] = δ δ δ / n_r
    let e = matrix_elements(&set);
    let gram = num("matrix elements", e.adjoint().checked_mul(&e))?.scale_real(1.0 / nf);
    let expected = ComplexMatrix::diagonal(
        &dims
            .iter()
            .flat_map(|&d| std::iter::repeat_n(C64::new(1.0 / d as f64, 0.0), d * d))
            .collect::<Vec<_>>(),
    );
    report.push(
        "matrix_element_orthogonality",
        gram.max_abs_diff(&expected),
        tol.eq,
    );

    let mut span_gap = 0usize;
    let mut offset = 0;
    for &d in &dims {
        let rank = num("span", svd(&e.submatrix(0, offset, n, d * d)))?.rank(tol.rank);
        span_gap = span_gap.max(d * d - rank.min(d * d));
        offset += d * d;
    }
    report.push("operator_span", span_gap as f64, 0.0);

    let cg = num("characters", character_gram(set.characters()))?;
    report.push(
        "character_orthonormality",
        cg.max_abs_diff(&ComplexMatrix::identity(set.len())),
        tol.eq,
    );

    let v = random_matrix(&mut rng(ctx.seed), group.class_count(), 1).column(0);
    let phi = num("class function", ClassFunction::new(group.clone(), v))?;
    let coef = num("class function", project_class_function(&phi, &set))?;
    let back = num("class function", reconstruct_class_function(&coef, &set))?;
    let recon = back
        .values()
        .iter()
        .zip(phi.values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    report.push("class_function_completeness", recon, tol.eq);

    // Σ_r P(r) restricted to each irrep, with weights w(a) = (1/N) Σ_r n_r conj χ_r(a)
    let weights: Vec<C64> = (0..n)
        .map(|a| {
            set.characters()
                .iter()
                .map(|chi| chi.at(a).conj() * chi.dim() as f64)
                .sum::<C64>()
                / nf
        })
        .collect();
    let mut unity = 0.0f64;
    for f in set.irreps() {
        let sum =
            irredkit::cmatrix::sum_matrices(n, f.dim(), f.dim(), |a| f.matrix(a).scale(weights[a]));
        unity = unity.max(rel(&sum, &ComplexMatrix::identity(f.dim())));
    }
    report.push("partition_of_unity", unity, tol.eq);

    // P^i_j P^k_q = δ_iq P^k_j inside each irrep; across irreps the
    // projectors vanish by matrix-element orthogonality
    let mut law = 0.0f64;
    for (r, f) in set.irreps().iter().enumerate() {
        let u = num("projectors", matrix_unit_projectors(f, &set, r))?;
        let d = u.size();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for q in 0..d {
                        let lhs = u.get(i, j) * u.get(k, q);
                        let rhs = if i == q {
                            u.get(k, j).clone()
                        } else {
                            ComplexMatrix::zeros(d, d)
                        };
                        law = law.max(rel(&lhs, &rhs));
                    }
                }
            }
        }
    }
    report.push("projector_product_law", law, tol.eq);

    if n <= REGULAR_CHECK_LIMIT {
        let reg = num(
            "regular representation",
            right_regular(group, ctx.max_order),
        )?;
        let k = num("multiplicities", multiplicities(&reg, &set, tol))?;
        let gap = k
            .iter()
            .zip(&dims)
            .map(|(a, b)| (*a as f64 - *b as f64).abs())
            .fold(0.0, f64::max);
        report.push("regular_multiplicities", gap, 0.0);

        let inv = num(
            "inversion",
            inversion_intertwiner(group, ctx.max_order, tol),
        )?;
        report.push("left_right_equivalence", inv.residual(), tol.eq);

        let block = match fine_decomposition(&reg, &set, tol) {
            Ok(d) => d.max_block_residual,
            Err(irredkit::Error::BlockResidualExceeded { residual, .. }) => residual,
            Err(e) => return Err(CliError::numerical("decomposition", e)),
        };
        report.push("regular_block_diagonalization", block, tol.block);
    } else {
        report.skip("regular_multiplicities", 0.0);
        report.skip("left_right_equivalence", tol.eq);
        report.skip("regular_block_diagonalization", tol.block);
    }

    let failed: Vec<String> = report.failures().into_iter().map(String::from).collect();
    let mut residuals = BTreeMap::new();
    for c in &report.checks {
        if let Some(r) = c.residual {
            residuals.insert(c.name.clone(), r);
        }
    }
    let mut out = CommandOutput::new(report);
    out.max_residuals = residuals;
    out.failed = failed;
    Ok(out)
}
