//! JSON documents read and written by the command-line tool.

use gaugeform::puiseux::twist;
use gaugeform::{Complex, GaugeTransform, Matrix, MatrixSeries, NormalForm, PuiseuxExpansion, Rational};
use serde::{Deserialize, Serialize};

use crate::codec::{Codec, Entry, Field, Precision};
use crate::error::CliError;

type Rows = Vec<Vec<Entry>>;

fn encode_matrix<T: Codec>(m: &Matrix<T>) -> Rows {
    m.rows().map(|row| row.iter().map(Codec::encode).collect()).collect()
}

fn decode_matrix<T: Codec>(rows: &Rows, n: usize, ctx: T::Context, path: &str) -> Result<Matrix<T>, CliError> {
    if rows.len() != n {
        return Err(
            CliError::validation("DimensionMismatch", format!("expected {n} rows, found {}", rows.len())).at(path)
        );
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(CliError::validation(
                "DimensionMismatch",
                format!("expected {n} columns, found {}", row.len()),
            )
            .at(format!("{path}[{i}]")));
        }
        let decoded = row
            .iter()
            .enumerate()
            .map(|(j, e)| T::decode(e, ctx).map_err(|msg| CliError::parse(msg).at(format!("{path}[{i}][{j}]"))))
            .collect::<Result<Vec<T>, _>>()?;
        out.push(decoded);
    }
    Ok(Matrix::from_rows(out)?)
}

fn decode_list<T: Codec>(entries: &[Entry], ctx: T::Context, path: &str) -> Result<Vec<T>, CliError> {
    entries
        .iter()
        .enumerate()
        .map(|(i, e)| T::decode(e, ctx).map_err(|msg| CliError::parse(msg).at(format!("{path}[{i}]"))))
        .collect()
}

fn check_field(found: Field, expected: Field) -> Result<(), CliError> {
    if found != expected {
        return Err(
            CliError::validation("FieldMismatch", format!("expected field {expected:?}, found {found:?}")).at("field")
        );
    }
    Ok(())
}

/// A truncated matrix series `A_0 + A_1 z + ... + A_K z^K` with requested order `k <= K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDocument {
    pub n: usize,
    pub k: usize,
    pub field: Field,
    /// `coefficients[m]` is `A_m` as a list of rows.
    pub coefficients: Vec<Rows>,
}

/// A series on either backend.
#[derive(Clone, Debug, PartialEq)]
pub enum Series {
    Rational(MatrixSeries<Rational>),
    Complex(MatrixSeries<Complex>),
}

impl SeriesDocument {
    pub fn from_series<T: Codec>(k: usize, a: &MatrixSeries<T>) -> Self {
        SeriesDocument { n: a.dim(), k, field: T::FIELD, coefficients: a.coeffs().iter().map(encode_matrix).collect() }
    }

    fn check_shape(&self) -> Result<(), CliError> {
        if self.n == 0 {
            return Err(CliError::validation("InvalidArgument", "n must be positive").at("n"));
        }
        if self.coefficients.is_empty() {
            return Err(CliError::validation("InvalidArgument", "no coefficients").at("coefficients"));
        }
        let order = self.coefficients.len() - 1;
        if order < self.k {
            return Err(CliError::validation(
                "OrderTooSmall",
                format!("document has K = {order} but requests k = {}", self.k),
            )
            .at("coefficients"));
        }
        Ok(())
    }

    /// Decodes on the backend `T`; fails if the field tag names the other one.
    pub fn decode<T: Codec>(&self, ctx: T::Context) -> Result<MatrixSeries<T>, CliError> {
        check_field(self.field, T::FIELD)?;
        self.check_shape()?;
        let coeffs = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(m, rows)| decode_matrix(rows, self.n, ctx, &format!("coefficients[{m}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MatrixSeries::new(coeffs)?)
    }

    /// Decodes on the backend named by the field tag; complex entries are read at `prec` bits.
    pub fn to_series(&self, prec: u32) -> Result<Series, CliError> {
        match self.field {
            Field::Rational => self.decode(()).map(Series::Rational),
            Field::Complex => self.decode(prec).map(Series::Complex),
        }
    }
}

/// Normal-form entries `b_1..b_{nk}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalFormDocument {
    pub n: usize,
    pub k: usize,
    pub field: Field,
    pub precision: Precision,
    pub b: Vec<Entry>,
}

impl NormalFormDocument {
    pub fn from_normal_form<T: Codec>(nf: &NormalForm<T>) -> Self {
        let ctx = nf.entries()[0].context();
        NormalFormDocument {
            n: nf.dim(),
            k: nf.order(),
            field: T::FIELD,
            precision: T::precision(ctx),
            b: nf.entries().iter().map(Codec::encode).collect(),
        }
    }

    pub fn decode<T: Codec>(&self, ctx: T::Context) -> Result<NormalForm<T>, CliError> {
        check_field(self.field, T::FIELD)?;
        let entries = decode_list(&self.b, ctx, "b")?;
        NormalForm::new(self.n, self.k, entries).map_err(|e| CliError::from(e).at("b"))
    }
}

/// One unipotent factor `I + G z^order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeFactorDocument {
    pub order: usize,
    pub matrix: Rows,
}

/// `g = (I + G_k z^k) ... (I + G_1 z) g_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeDocument {
    pub n: usize,
    pub field: Field,
    pub precision: Precision,
    pub g0: Rows,
    pub factors: Vec<GaugeFactorDocument>,
}

impl GaugeDocument {
    pub fn from_gauge<T: Codec>(g: &GaugeTransform<T>) -> Self {
        GaugeDocument {
            n: g.dim(),
            field: T::FIELD,
            precision: T::precision(g.g0().context()),
            g0: encode_matrix(g.g0()),
            factors: g
                .factors()
                .iter()
                .map(|(l, m)| GaugeFactorDocument { order: *l, matrix: encode_matrix(m) })
                .collect(),
        }
    }

    pub fn decode<T: Codec>(&self, ctx: T::Context) -> Result<GaugeTransform<T>, CliError> {
        check_field(self.field, T::FIELD)?;
        let g0 = decode_matrix(&self.g0, self.n, ctx, "g0")?;
        let factors = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| Ok((f.order, decode_matrix(&f.matrix, self.n, ctx, &format!("factors[{i}].matrix"))?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        GaugeTransform::new(g0, factors).map_err(|e| CliError::from(e).at("factors"))
    }
}

/// Coefficients `a_1..a_M` of one branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchDocument {
    pub branch: usize,
    pub coefficients: Vec<Entry>,
}

/// Puiseux coefficients of the eigenvalue branches, each branch listing its own `a_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PuiseuxDocument {
    pub n: usize,
    pub precision: u32,
    pub branches: Vec<BranchDocument>,
}

impl PuiseuxDocument {
    /// Lists the given branches of `a`.
    pub fn from_expansion(a: &PuiseuxExpansion, branches: &[usize]) -> Result<Self, CliError> {
        let branches = branches
            .iter()
            .map(|&i| {
                let view = a.with_branch(i)?;
                Ok(BranchDocument {
                    branch: i,
                    coefficients: view.branch_coefficients().iter().map(Codec::encode).collect(),
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(PuiseuxDocument { n: a.ramification(), precision: a.prec(), branches })
    }

    /// One expansion per listed branch, each carrying its branch tag.
    pub fn decode(&self) -> Result<Vec<PuiseuxExpansion>, CliError> {
        self.branches
            .iter()
            .enumerate()
            .map(|(i, br)| {
                let path = format!("branches[{i}].coefficients");
                let coeffs: Vec<Complex> = decode_list(&br.coefficients, self.precision, &path)?;
                let canonical = twist(&coeffs, self.n, -(br.branch as i64));
                PuiseuxExpansion::new(self.n, canonical, br.branch).map_err(|e| CliError::from(e).at(path))
            })
            .collect()
    }
}

/// Input of `eigen-to-coeffs`: a bare coefficient list or a `puiseux` output document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefficientInput {
    Puiseux(PuiseuxDocument),
    Plain { coefficients: Vec<Entry> },
}

impl CoefficientInput {
    /// The coefficients at `prec` bits; for a `puiseux` document, its first listed branch
    /// (the normal form does not depend on which branch is used).
    pub fn coefficients(&self, n: usize, prec: u32) -> Result<Vec<Complex>, CliError> {
        match self {
            CoefficientInput::Plain { coefficients } => decode_list(coefficients, prec, "coefficients"),
            CoefficientInput::Puiseux(doc) => {
                if doc.n != n {
                    return Err(CliError::validation(
                        "DimensionMismatch",
                        format!("document has n = {}, but --n is {n}", doc.n),
                    )
                    .at("n"));
                }
                let first = doc
                    .branches
                    .first()
                    .ok_or_else(|| CliError::validation("InvalidArgument", "no branches listed").at("branches"))?;
                decode_list(&first.coefficients, prec, "branches[0].coefficients")
            }
        }
    }
}

/// Writes a document as pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
