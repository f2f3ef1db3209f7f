//! One function per subcommand. Each returns a report that renders either as
//! a human-readable table (`Display`) or as JSON (`Serialize`).

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;
use weyrkit::basis::{operator_kernel_basis, pullback_basis};
use weyrkit::kernel::{
    centralizer_dim, invariant_table, kernel_dim_report, kernel_index, operators_similar, resolve_structure,
    similarity_witness,
};
use weyrkit::poly::char_poly;
use weyrkit::weyr::{weyr_matrix, weyr_transform_with};
use weyrkit::{EigenStructure, InvariantTable, Matrix, Partition, SylvesterOperator};

use crate::files::{render_entries, DeclaredStructureFile, MatrixFile};
use crate::CliError;

/// Flags shared by all subcommands.
#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Cross-check closed forms against the vectorization oracle.
    pub oracle: bool,
    /// Declared structure per matrix operand, in operand order; `None`
    /// means "compute from the matrix".
    pub declared: Vec<Option<PathBuf>>,
}

impl Options {
    fn declared_for(&self, operand: usize) -> Result<Option<EigenStructure>, CliError> {
        match self.declared.get(operand) {
            Some(Some(path)) => DeclaredStructureFile::load(path).map(Some),
            _ => Ok(None),
        }
    }

    fn check_declared_count(&self, operands: usize) -> Result<(), CliError> {
        if self.declared.len() > operands {
            return Err(CliError::Input(format!(
                "{} --declared files for {operands} matrix operand(s)",
                self.declared.len()
            )));
        }
        Ok(())
    }
}

/// Something a subcommand prints.
pub trait Report: Serialize + fmt::Display {
    fn exit_code(&self) -> i32 {
        0
    }
}

struct Operand {
    matrix: Matrix,
    structure: EigenStructure,
}

fn load_operand(opts: &Options, index: usize, path: &Path) -> Result<Operand, CliError> {
    let matrix = MatrixFile::load(path)?;
    if !matrix.is_square() {
        return Err(CliError::Input(format!(
            "{}: matrix is {}x{}, expected square",
            path.display(),
            matrix.rows(),
            matrix.cols()
        )));
    }
    let declared = opts.declared_for(index)?;
    let structure = resolve_structure(&matrix, declared.as_ref())
        .map_err(|e| CliError::from(e).context(&path.display().to_string()))?;
    Ok(Operand { matrix, structure })
}

fn load_operands(opts: &Options, paths: &[&Path]) -> Result<Vec<Operand>, CliError> {
    opts.check_declared_count(paths.len())?;
    paths
        .iter()
        .enumerate()
        .map(|(i, p)| load_operand(opts, i, p))
        .collect()
}

fn write_grid(f: &mut fmt::Formatter<'_>, entries: &[Vec<String>], indent: &str) -> fmt::Result {
    let width = entries.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
    for row in entries {
        let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        writeln!(f, "{indent}[ {} ]", cells.join("  "))?;
    }
    Ok(())
}

fn parts_string(p: &[usize]) -> String {
    Partition::new(p.to_vec()).map_or_else(|_| format!("{p:?}"), |p| p.to_string())
}

// ---------------------------------------------------------------- structure

#[derive(Clone, Debug, Serialize)]
pub struct EigenvalueEntry {
    pub eigenvalue: String,
    pub multiplicity: usize,
    pub index: usize,
    /// `nullity((A − λI)^k)` for `k = 1..=index`.
    pub nullities: Vec<usize>,
    pub weyr: Vec<usize>,
    pub segre: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub dim: usize,
    pub characteristic_polynomial: String,
    pub eigenvalues: Vec<EigenvalueEntry>,
}

fn structure_entries(a: &Matrix, s: &EigenStructure) -> Result<Vec<EigenvalueEntry>, CliError> {
    s.blocks()
        .iter()
        .map(|(lambda, p)| {
            let nullities = a.shift(lambda)?.nullity_chain()?;
            Ok(EigenvalueEntry {
                eigenvalue: lambda.to_string(),
                multiplicity: p.weight(),
                index: p.len(),
                nullities,
                weyr: p.parts().to_vec(),
                segre: p.dual().parts().to_vec(),
            })
        })
        .collect()
}

pub fn cmd_structure(opts: &Options, path: &Path) -> Result<StructureReport, CliError> {
    let op = load_operands(opts, &[path])?.remove(0);
    Ok(StructureReport {
        dim: op.matrix.rows(),
        characteristic_polynomial: char_poly(&op.matrix)?.to_string(),
        eigenvalues: structure_entries(&op.matrix, &op.structure)?,
    })
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dimension: {}", self.dim)?;
        writeln!(f, "characteristic polynomial: {}", self.characteristic_polynomial)?;
        for e in &self.eigenvalues {
            writeln!(f)?;
            writeln!(f, "eigenvalue {}", e.eigenvalue)?;
            writeln!(f, "  algebraic multiplicity  {}", e.multiplicity)?;
            writeln!(f, "  index                   {}", e.index)?;
            for (k, n) in e.nullities.iter().enumerate() {
                writeln!(f, "  nullity (A - λI)^{:<6} {n}", k + 1)?;
            }
            writeln!(f, "  Weyr characteristic     {}", parts_string(&e.weyr))?;
            writeln!(f, "  Segre characteristic    {}", parts_string(&e.segre))?;
        }
        Ok(())
    }
}

impl Report for StructureReport {}

// --------------------------------------------------------------------- form

#[derive(Clone, Debug, Serialize)]
pub struct FormReport {
    pub structure: StructureReport,
    pub weyr: Vec<Vec<String>>,
    pub transform: Vec<Vec<String>>,
    pub transform_inverse: Vec<Vec<String>>,
    /// Whether `P⁻¹AP = W` was confirmed exactly.
    pub verified: bool,
}

pub fn cmd_form(opts: &Options, path: &Path) -> Result<FormReport, CliError> {
    let op = load_operands(opts, &[path])?.remove(0);
    let d = weyr_transform_with(&op.matrix, &op.structure)?;
    let verified = d.transform_inv.matmul(&op.matrix)?.matmul(&d.transform)? == d.weyr;
    Ok(FormReport {
        structure: StructureReport {
            dim: op.matrix.rows(),
            characteristic_polynomial: char_poly(&op.matrix)?.to_string(),
            eigenvalues: structure_entries(&op.matrix, &op.structure)?,
        },
        weyr: render_entries(&d.weyr),
        transform: render_entries(&d.transform),
        transform_inverse: render_entries(&d.transform_inv),
        verified,
    })
}

impl fmt::Display for FormReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.structure)?;
        writeln!(f)?;
        writeln!(f, "Weyr form W:")?;
        write_grid(f, &self.weyr, "  ")?;
        writeln!(f, "transform P (P⁻¹AP = W):")?;
        write_grid(f, &self.transform, "  ")?;
        writeln!(f, "inverse P⁻¹:")?;
        write_grid(f, &self.transform_inverse, "  ")?;
        writeln!(f, "check P⁻¹AP = W: {}", if self.verified { "holds" } else { "FAILS" })
    }
}

impl Report for FormReport {
    fn exit_code(&self) -> i32 {
        if self.verified {
            0
        } else {
            1
        }
    }
}

// -------------------------------------------------------------- kernel-dims

#[derive(Clone, Debug, Serialize)]
pub struct PairDims {
    /// 1-based eigenvalue positions in the two structures.
    pub i: usize,
    pub j: usize,
    pub eigenvalue: String,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelDimsReport {
    pub k_max: usize,
    pub pairs: Vec<PairDims>,
    pub totals: Vec<usize>,
    pub oracle: Option<Vec<usize>>,
    /// `"MATCH"` or `"MISMATCH"` per `k` when the oracle ran.
    pub verdicts: Option<Vec<String>>,
}

pub fn cmd_kernel_dims(opts: &Options, a: &Path, b: &Path, k: Option<usize>) -> Result<KernelDimsReport, CliError> {
    let ops = load_operands(opts, &[a, b])?;
    let (sa, sb) = (&ops[0].structure, &ops[1].structure);
    let k_max = match k {
        Some(0) => return Err(CliError::Input("--k must be at least 1".into())),
        Some(k) => k,
        None => kernel_index(sa, sb).unwrap_or(1),
    };
    let report = kernel_dim_report(sa, sb, k_max);
    let pairs = report
        .per_pair
        .iter()
        .map(|(&(i, j), dims)| PairDims {
            i: i + 1,
            j: j + 1,
            eigenvalue: sa.blocks()[i].0.to_string(),
            alpha: sa.blocks()[i].1.parts().to_vec(),
            beta: sb.blocks()[j].1.parts().to_vec(),
            dims: dims.clone(),
        })
        .collect();
    let (oracle, verdicts) = if opts.oracle {
        let op = SylvesterOperator::new(ops[0].matrix.clone(), ops[1].matrix.clone())?;
        let dims = op.oracle_kernel_dims(k_max);
        let verdicts = dims
            .iter()
            .zip(&report.totals)
            .map(|(o, t)| if o == t { "MATCH" } else { "MISMATCH" }.to_string())
            .collect();
        (Some(dims), Some(verdicts))
    } else {
        (None, None)
    };
    Ok(KernelDimsReport {
        k_max,
        pairs,
        totals: report.totals,
        oracle,
        verdicts,
    })
}

impl fmt::Display for KernelDimsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            writeln!(f, "no common eigenvalues: the operator is injective")?;
        }
        for p in &self.pairs {
            writeln!(
                f,
                "pair ({},{}): eigenvalue {}, α = {}, β = {}",
                p.i,
                p.j,
                p.eigenvalue,
                parts_string(&p.alpha),
                parts_string(&p.beta)
            )?;
        }
        let mut header = format!("{:>3}", "k");
        for p in &self.pairs {
            header.push_str(&format!("  {:>9}", format!("({},{})", p.i, p.j)));
        }
        header.push_str(&format!("  {:>9}", "dim ker"));
        if self.oracle.is_some() {
            header.push_str(&format!("  {:>9}  verdict", "oracle"));
        }
        writeln!(f, "{header}")?;
        for k in 0..self.k_max {
            let mut line = format!("{:>3}", k + 1);
            for p in &self.pairs {
                line.push_str(&format!("  {:>9}", p.dims[k]));
            }
            line.push_str(&format!("  {:>9}", self.totals[k]));
            if let (Some(o), Some(v)) = (&self.oracle, &self.verdicts) {
                line.push_str(&format!("  {:>9}  {}", o[k], v[k]));
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl Report for KernelDimsReport {
    fn exit_code(&self) -> i32 {
        match &self.verdicts {
            Some(v) if v.iter().any(|s| s != "MATCH") => 1,
            _ => 0,
        }
    }
}

// -------------------------------------------------------------------- basis

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coords {
    Weyr,
    Original,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisEntry {
    /// 1-based outer block `(i, j)`.
    pub pair: (usize, usize),
    pub symbol: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub k: usize,
    pub coords: Coords,
    pub count: usize,
    pub elements: Vec<BasisEntry>,
    pub verification: String,
    pub holds: bool,
}

pub fn cmd_basis(opts: &Options, a: &Path, b: &Path, k: usize, coords: Coords) -> Result<BasisReport, CliError> {
    if k == 0 {
        return Err(CliError::Input("--k must be at least 1".into()));
    }
    let ops = load_operands(opts, &[a, b])?;
    let (sa, sb) = (&ops[0].structure, &ops[1].structure);
    let symbolic = operator_kernel_basis(sa, sb, k)?;
    let single_block = sa.blocks().len() == 1 && sb.blocks().len() == 1;
    let weyr_basis: Vec<Matrix> = symbolic.iter().map(|e| e.materialize()).collect();
    let (basis, op) = match coords {
        Coords::Weyr => {
            let op = SylvesterOperator::new(weyr_matrix(sa), weyr_matrix(sb))?;
            (weyr_basis, op)
        }
        Coords::Original => {
            let da = weyr_transform_with(&ops[0].matrix, sa)?;
            let db = weyr_transform_with(&ops[1].matrix, sb)?;
            let basis = pullback_basis(&da, &db, &weyr_basis)?;
            let op = SylvesterOperator::new(ops[0].matrix.clone(), ops[1].matrix.clone())?;
            (basis, op)
        }
    };
    let verdict = op.verify_kernel_basis(k, &basis);
    let elements = symbolic
        .iter()
        .zip(&basis)
        .map(|(e, m)| BasisEntry {
            pair: (e.pair.0 + 1, e.pair.1 + 1),
            symbol: if single_block {
                e.element.to_string()
            } else {
                e.to_string()
            },
            matrix: render_entries(m),
        })
        .collect();
    Ok(BasisReport {
        k,
        coords,
        count: basis.len(),
        elements,
        verification: verdict.to_string(),
        holds: verdict.holds(),
    })
}

impl fmt::Display for BasisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords = match self.coords {
            Coords::Weyr => "Weyr",
            Coords::Original => "original",
        };
        writeln!(f, "basis of ker φ^{} in {coords} coordinates: {} elements", self.k, self.count)?;
        for (n, e) in self.elements.iter().enumerate() {
            writeln!(f)?;
            writeln!(f, "[{}] {}", n + 1, e.symbol)?;
            write_grid(f, &e.matrix, "    ")?;
        }
        writeln!(f)?;
        writeln!(f, "verification: {}", self.verification)
    }
}

impl Report for BasisReport {
    fn exit_code(&self) -> i32 {
        if self.holds {
            0
        } else {
            1
        }
    }
}

// --------------------------------------------------------------- invariants

#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub eigenvalue: String,
    pub characteristic: Vec<usize>,
    pub index: usize,
}

fn table_entries(t: &InvariantTable) -> Vec<TableEntry> {
    t.iter()
        .map(|(l, p)| TableEntry {
            eigenvalue: l.to_string(),
            characteristic: p.parts().to_vec(),
            index: p.len(),
        })
        .collect()
}

fn write_table(f: &mut fmt::Formatter<'_>, entries: &[TableEntry], indent: &str) -> fmt::Result {
    if entries.is_empty() {
        writeln!(f, "{indent}(empty)")?;
    }
    for e in entries {
        writeln!(
            f,
            "{indent}λ = {}: {} (index {})",
            e.eigenvalue,
            parts_string(&e.characteristic),
            e.index
        )?;
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantsReport {
    pub table: Vec<TableEntry>,
    /// With `--oracle`: whether brute-force nullities of `φ_{A−λI,B}^k`
    /// reproduce every characteristic.
    pub oracle_match: Option<bool>,
}

pub fn cmd_invariants(opts: &Options, a: &Path, b: &Path) -> Result<InvariantsReport, CliError> {
    let ops = load_operands(opts, &[a, b])?;
    let table = invariant_table(&ops[0].structure, &ops[1].structure)?;
    let oracle_match = if opts.oracle {
        let mut all = true;
        for (lambda, p) in &table {
            let op = SylvesterOperator::new(ops[0].matrix.shift(lambda)?, ops[1].matrix.clone())?;
            let dims = op.oracle_kernel_dims(p.len() + 1);
            let mut prev = 0;
            let steps: Vec<usize> = dims
                .iter()
                .map(|&d| {
                    let s = d - prev;
                    prev = d;
                    s
                })
                .collect();
            all &= steps[..p.len()] == *p.parts() && steps[p.len()] == 0;
        }
        Some(all)
    } else {
        None
    };
    Ok(InvariantsReport {
        table: table_entries(&table),
        oracle_match,
    })
}

impl fmt::Display for InvariantsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "operator Weyr characteristics:")?;
        write_table(f, &self.table, "  ")?;
        if let Some(ok) = self.oracle_match {
            writeln!(f, "oracle: {}", if ok { "MATCH" } else { "MISMATCH" })?;
        }
        Ok(())
    }
}

impl Report for InvariantsReport {
    fn exit_code(&self) -> i32 {
        if self.oracle_match == Some(false) {
            1
        } else {
            0
        }
    }
}

// ------------------------------------------------------------------ compare

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub eigenvalue: String,
    pub k: usize,
    /// `ω_k` in the first and second table (0 when absent).
    pub first: usize,
    pub second: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub similar: bool,
    pub first: Vec<TableEntry>,
    pub second: Vec<TableEntry>,
    pub witness: Option<Witness>,
}

pub fn cmd_compare(opts: &Options, a: &Path, b: &Path, c: &Path, d: &Path) -> Result<CompareReport, CliError> {
    let ops = load_operands(opts, &[a, b, c, d])?;
    let t1 = invariant_table(&ops[0].structure, &ops[1].structure)?;
    let t2 = invariant_table(&ops[2].structure, &ops[3].structure)?;
    let similar = operators_similar(&t1, &t2);
    let witness = similarity_witness(&t1, &t2).map(|(lambda, k)| Witness {
        first: t1.get(&lambda).map_or(0, |p| p.part(k)),
        second: t2.get(&lambda).map_or(0, |p| p.part(k)),
        eigenvalue: lambda.to_string(),
        k,
    });
    Ok(CompareReport {
        similar,
        first: table_entries(&t1),
        second: table_entries(&t2),
        witness,
    })
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.similar { "SIMILAR" } else { "NOT SIMILAR" })?;
        writeln!(f, "first operator:")?;
        write_table(f, &self.first, "  ")?;
        writeln!(f, "second operator:")?;
        write_table(f, &self.second, "  ")?;
        if let Some(w) = &self.witness {
            writeln!(
                f,
                "witness: λ = {}, k = {}: ω_k = {} vs {}",
                w.eigenvalue, w.k, w.first, w.second
            )?;
        }
        Ok(())
    }
}

impl Report for CompareReport {
    fn exit_code(&self) -> i32 {
        if self.similar {
            0
        } else {
            3
        }
    }
}

// -------------------------------------------------------------- centralizer

#[derive(Clone, Debug, Serialize)]
pub struct CentralizerReport {
    pub dim: usize,
    pub oracle: Option<usize>,
    pub matches: Option<bool>,
}

pub fn cmd_centralizer(opts: &Options, path: &Path) -> Result<CentralizerReport, CliError> {
    let op = load_operands(opts, &[path])?.remove(0);
    let dim = centralizer_dim(&op.structure);
    let oracle = if opts.oracle {
        let commutant = SylvesterOperator::new(op.matrix.clone(), op.matrix)?;
        Some(commutant.oracle_kernel_dims(1)[0])
    } else {
        None
    };
    Ok(CentralizerReport {
        dim,
        oracle,
        matches: oracle.map(|o| o == dim),
    })
}

impl fmt::Display for CentralizerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "centralizer dimension: {}", self.dim)?;
        if let (Some(o), Some(m)) = (self.oracle, self.matches) {
            writeln!(f, "oracle: {o} {}", if m { "MATCH" } else { "MISMATCH" })?;
        }
        Ok(())
    }
}

impl Report for CentralizerReport {
    fn exit_code(&self) -> i32 {
        if self.matches == Some(false) {
            1
        } else {
            0
        }
    }
}
