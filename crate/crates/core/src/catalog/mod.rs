//! The shipped tables: algebras, second cohomology, central extensions,
//! degeneration certificates, R-sets and invariant tables.
//!
//! Every table is a JSON file under `data/`, embedded at compile time and
//! also loadable from a directory so that edited copies can be checked.

mod suite;

use std::collections::HashSet;
use std::path::Path;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::StructureConstants;
use crate::degeneration::{linear_combination, Certificate, Expr, RSet, Symbol};
use crate::error::{Error, Result};
use crate::exactmath::{gq, gq_ratio, GaussianRational};

pub use suite::{verify_all, Check, CheckReport, Item, SuiteConfig, SuiteReport, Summary};

/// Parameter values tried for one-parameter families.
pub fn family_sample_values() -> Vec<GaussianRational> {
    vec![gq(0), gq(1), gq(2), gq(5), gq(-2), gq_ratio(1, 2)]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSlot {
    pub symbol: String,
    /// Values outside the domain.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exclude: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// A Gaussian rational such as `-1/2` or `3+i`, or an expression in
    /// the parameters.
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    #[serde(alias = "name")]
    pub id: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<ParamSlot>,
    pub entries: Vec<EntryRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub algebras: Vec<CatalogEntry>,
}

/// Expected `H²` of one algebra, optionally restricted to a parameter value
/// (`at`) or to the complement of some values (`exclude`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H2Record {
    pub algebra: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exclude: Vec<String>,
    pub dim: usize,
    /// Representatives as `Δ` combinations.
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyFile {
    pub version: u32,
    pub h2: Vec<H2Record>,
}

/// `child = parent_θ`, with parent and child written `id` or `id^param`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionRecord {
    pub parent: String,
    pub child: String,
    /// One `Δ` combination per added dimension.
    pub cocycle: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionFile {
    pub version: u32,
    pub extensions: Vec<ExtensionRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraRef {
    pub id: String,
    /// Comma-separated parameter expressions; may involve `t` on the source
    /// side (a parametrized index) and the certificate's free symbol.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeParam {
    pub symbol: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exclude: Vec<String>,
}

/// A row of a parametrized basis: either `t*e1 - 2/t*e3` or explicit
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BasisRow {
    Combination(String),
    Coordinates(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    #[serde(default)]
    pub label: String,
    /// `detailed` or `compact`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<String>,
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    /// A symbol left free in the row, sampled by the suite.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free: Option<FreeParam>,
    pub basis: Vec<BasisRow>,
}

impl CertificateRecord {
    /// Values tried for the free symbol: the family samples outside its
    /// exclusions, or a single `None` when nothing is free.
    pub fn free_samples(&self) -> Result<Vec<Option<GaussianRational>>> {
        let Some(free) = &self.free else {
            return Ok(vec![None]);
        };
        let excluded = free
            .exclude
            .iter()
            .map(|s| Expr::parse(s)?.eval_constant())
            .collect::<Result<Vec<_>>>()?;
        Ok(family_sample_values()
            .into_iter()
            .filter(|v| !excluded.contains(v))
            .map(Some)
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub version: u32,
    pub certificates: Vec<CertificateRecord>,
}

/// A non-degeneration row: the source lies in `rset`, the targets should not.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RSetRow {
    pub source: String,
    pub targets: Vec<String>,
    pub rset: RSet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RSetFile {
    pub version: u32,
    pub rows: Vec<RSetRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableValue {
    pub id: String,
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tables {
    pub version: u32,
    pub orbit_dimension: Vec<TableValue>,
    pub square_dimension: Vec<TableValue>,
    pub components: Vec<String>,
    pub variety_dimension: usize,
}

/// A printed value that the listed structure constants do not reproduce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    /// Suite check name, e.g. `annihilators`.
    pub check: String,
    /// Item subject exactly as the suite reports it.
    pub subject: String,
    pub printed: String,
    pub computed: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub discrepancies: Vec<Discrepancy>,
}

const FILES: [&str; 7] = [
    "algebras.json",
    "cohomology.json",
    "extensions.json",
    "certificates.json",
    "rsets.json",
    "tables.json",
    "discrepancies.json",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Catalog {
    pub algebras: AlgebraFile,
    pub cohomology: CohomologyFile,
    pub extensions: ExtensionFile,
    pub certificates: CertificateFile,
    pub rsets: RSetFile,
    pub tables: Tables,
    pub discrepancies: DiscrepancyFile,
}

fn parse<T: for<'de> Deserialize<'de>>(name: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Data(format!("{name}: {e}")))
}

impl Catalog {
    /// The tables compiled into the library.
    pub fn builtin() -> Result<Catalog> {
        Catalog::from_texts([
            include_str!("../../data/algebras.json"),
            include_str!("../../data/cohomology.json"),
            include_str!("../../data/extensions.json"),
            include_str!("../../data/certificates.json"),
            include_str!("../../data/rsets.json"),
            include_str!("../../data/tables.json"),
            include_str!("../../data/discrepancies.json"),
        ])
    }

    /// Shared copy of [`Catalog::builtin`].
    pub fn shipped() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::builtin().expect("shipped tables are well-formed"))
    }

    /// Reads the table files from `dir`; `discrepancies.json` may be absent.
    pub fn load_dir(dir: &Path) -> Result<Catalog> {
        let mut texts = Vec::new();
        for f in FILES {
            let path = dir.join(f);
            if f == FILES[6] && !path.exists() {
                texts.push(r#"{"version": 1, "discrepancies": []}"#.to_string());
            } else {
                texts.push(std::fs::read_to_string(path)?);
            }
        }
        let texts: [&str; 7] = std::array::from_fn(|i| texts[i].as_str());
        Catalog::from_texts(texts)
    }

    pub fn from_texts(texts: [&str; 7]) -> Result<Catalog> {
        let catalog = Catalog {
            algebras: parse(FILES[0], texts[0])?,
            cohomology: parse(FILES[1], texts[1])?,
            extensions: parse(FILES[2], texts[2])?,
            certificates: parse(FILES[3], texts[3])?,
            rsets: parse(FILES[4], texts[4])?,
            tables: parse(FILES[5], texts[5])?,
            discrepancies: parse(FILES[6], texts[6])?,
        };
        catalog.validate()?;
        Ok(catalog)
    }

    /// `(file name, pretty JSON)` for every table.
    pub fn to_texts(&self) -> Result<Vec<(&'static str, String)>> {
        let texts = [
            serde_json::to_string_pretty(&self.algebras)?,
            serde_json::to_string_pretty(&self.cohomology)?,
            serde_json::to_string_pretty(&self.extensions)?,
            serde_json::to_string_pretty(&self.certificates)?,
            serde_json::to_string_pretty(&self.rsets)?,
            serde_json::to_string_pretty(&self.tables)?,
            serde_json::to_string_pretty(&self.discrepancies)?,
        ];
        Ok(FILES.into_iter().zip(texts).collect())
    }

    fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for e in &self.algebras.algebras {
            if !seen.insert(e.id.as_str()) {
                return Err(Error::Data(format!("duplicate id `{}`", e.id)));
            }
            let symbols: Vec<&str> = e.params.iter().map(|p| p.symbol.as_str()).collect();
            for r in &e.entries {
                if [r.i, r.j, r.k].iter().any(|x| !(1..=e.dim).contains(x)) {
                    return Err(Error::Data(format!(
                        "{}: entry ({}, {}, {}) out of range",
                        e.id, r.i, r.j, r.k
                    )));
                }
                let c = Expr::parse(&r.c).map_err(|err| Error::Data(format!("{}: {err}", e.id)))?;
                if let Some(p) = c.params().into_iter().find(|p| !symbols.contains(&p.as_str())) {
                    return Err(Error::Data(format!("{}: unknown symbol `{p}` in `{}`", e.id, r.c)));
                }
            }
        }
        let known = |spec: &str| self.split_spec(spec).map(|_| ());
        for h in &self.cohomology.h2 {
            known(&h.algebra)?;
        }
        for x in &self.extensions.extensions {
            known(&x.parent)?;
            known(&x.child)?;
        }
        for c in &self.certificates.certificates {
            known(&c.source.id)?;
            known(&c.target.id)?;
        }
        for r in &self.rsets.rows {
            known(&r.source)?;
            r.targets.iter().try_for_each(|t| known(t))?;
        }
        for v in self.tables.orbit_dimension.iter().chain(&self.tables.square_dimension) {
            known(&v.id)?;
        }
        for d in &self.discrepancies.discrepancies {
            d.check.parse::<Check>()?;
        }
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.algebras.algebras
    }

    pub fn entry(&self, id: &str) -> Option<&CatalogEntry> {
        self.algebras.algebras.iter().find(|e| e.id == id)
    }

    /// Splits `id`, `id^value` or `id^{v1,v2}` into an entry and the raw
    /// parameter texts.
    pub fn split_spec(&self, spec: &str) -> Result<(&CatalogEntry, Vec<String>)> {
        let spec = spec.trim();
        if let Some(e) = self.entry(spec) {
            return Ok((e, Vec::new()));
        }
        for (pos, _) in spec.match_indices('^').collect::<Vec<_>>().into_iter().rev() {
            if let Some(e) = self.entry(&spec[..pos]) {
                let rest = &spec[pos + 1..];
                let rest = rest.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(rest);
                return Ok((e, rest.split(',').map(|s| s.trim().to_string()).collect()));
            }
        }
        Err(Error::UnknownAlgebra(spec.to_string()))
    }

    /// Numeric instance of `id` with the given parameter values.
    pub fn get(&self, id: &str, params: &[GaussianRational]) -> Result<StructureConstants> {
        self.entry(id)
            .ok_or_else(|| Error::UnknownAlgebra(id.to_string()))?
            .instantiate(params)
    }

    /// Resolves `id[^params]`; `zero` needs a dimension.
    pub fn resolve(&self, spec: &str, dim: Option<usize>) -> Result<StructureConstants> {
        if spec == "zero" {
            let n = dim.ok_or_else(|| Error::Data("the zero algebra needs a dimension".into()))?;
            return Ok(StructureConstants::zero(n));
        }
        let (entry, raw) = self.split_spec(spec)?;
        let values = raw
            .iter()
            .map(|s| Expr::parse(s)?.eval_constant())
            .collect::<Result<Vec<_>>>()?;
        entry.instantiate(&values)
    }

    /// Ids carrying every tag in `tags`, in table order.
    pub fn list(&self, tags: &[&str]) -> Vec<&str> {
        self.entries()
            .iter()
            .filter(|e| tags.iter().all(|t| e.tags.iter().any(|x| x == t)))
            .map(|e| e.id.as_str())
            .collect()
    }

    /// Builds a verifiable certificate; `free` supplies the value of the
    /// row's free symbol when it has one.
    pub fn certificate(&self, rec: &CertificateRecord, free: Option<&GaussianRational>) -> Result<Certificate> {
        let label = if rec.label.is_empty() {
            format!("{} -> {}", rec.source.id, rec.target.id)
        } else {
            rec.label.clone()
        };
        let fix = |e: Expr| -> Result<Expr> {
            match (&rec.free, free) {
                (Some(f), Some(v)) => Ok(e.substitute_param(&f.symbol, &Expr::Const(v.clone()))),
                (Some(f), None) => Err(Error::Data(format!("`{label}` needs a value for `{}`", f.symbol))),
                (None, _) => Ok(e),
            }
        };
        let params = |r: &AlgebraRef| -> Result<Vec<Expr>> {
            match &r.param {
                None => Ok(Vec::new()),
                Some(p) => p.split(',').map(|s| fix(Expr::parse(s)?)).collect(),
            }
        };

        let src = self
            .entry(&rec.source.id)
            .ok_or_else(|| Error::UnknownAlgebra(rec.source.id.clone()))?;
        let n = src.dim;
        let source = src.symbolic(&params(&rec.source)?)?;
        let tgt = self
            .entry(&rec.target.id)
            .ok_or_else(|| Error::UnknownAlgebra(rec.target.id.clone()))?;
        let values = params(&rec.target)?
            .iter()
            .map(Expr::eval_constant)
            .collect::<Result<Vec<_>>>()?;
        let mut target = tgt.instantiate(&values)?;
        if target.dim() < n {
            target = target.padded(n - target.dim());
        }
        if rec.basis.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "`{label}` has {} basis rows for dimension {n}",
                rec.basis.len()
            )));
        }
        let basis = rec
            .basis
            .iter()
            .map(|row| -> Result<Vec<Expr>> {
                let coords = match row {
                    BasisRow::Combination(s) => linear_combination(s, n)?,
                    BasisRow::Coordinates(v) => v.iter().map(|s| Expr::parse(s)).collect::<Result<_>>()?,
                };
                coords.into_iter().map(fix).collect()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Certificate {
            label,
            dim: n,
            source,
            target,
            basis,
        })
    }
}

/// Reads one algebra in the table format; `name` may stand in for `id`.
pub fn parse_algebra(text: &str) -> Result<CatalogEntry> {
    let entry: CatalogEntry = parse("algebra file", text)?;
    for r in &entry.entries {
        if [r.i, r.j, r.k].iter().any(|x| !(1..=entry.dim).contains(x)) {
            return Err(Error::Data(format!(
                "{}: entry ({}, {}, {}) out of range",
                entry.id, r.i, r.j, r.k
            )));
        }
    }
    Ok(entry)
}

/// Parses certificate text holding one record, an array, or a full table.
pub fn parse_certificates(text: &str) -> Result<Vec<CertificateRecord>> {
    if let Ok(file) = serde_json::from_str::<CertificateFile>(text) {
        return Ok(file.certificates);
    }
    if let Ok(list) = serde_json::from_str::<Vec<CertificateRecord>>(text) {
        return Ok(list);
    }
    Ok(vec![serde_json::from_str::<CertificateRecord>(text)?])
}

impl CatalogEntry {
    /// Table record of a concrete algebra.
    pub fn from_structure(a: &StructureConstants) -> CatalogEntry {
        CatalogEntry {
            id: a.name().to_string(),
            dim: a.dim(),
            params: Vec::new(),
            entries: a
                .entries()
                .into_iter()
                .map(|(i, j, k, c)| EntryRecord {
                    i,
                    j,
                    k,
                    c: c.to_string(),
                })
                .collect(),
            tags: Vec::new(),
            provenance: String::new(),
        }
    }

    pub fn is_family(&self) -> bool {
        !self.params.is_empty()
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }

    fn check_count(&self, got: usize) -> Result<()> {
        if got != self.params.len() {
            return Err(Error::ParameterCount {
                id: self.id.clone(),
                expected: self.params.len(),
                got,
            });
        }
        Ok(())
    }

    /// Entries with parameters replaced by expressions (possibly in `t`).
    pub fn symbolic(&self, values: &[Expr]) -> Result<Vec<(usize, usize, usize, Expr)>> {
        self.check_count(values.len())?;
        let lookup = |s: Symbol<'_>| match s {
            Symbol::Param(p) => self
                .params
                .iter()
                .position(|slot| slot.symbol == p)
                .map(|i| values[i].clone()),
            _ => None,
        };
        self.entries
            .iter()
            .map(|r| Ok((r.i, r.j, r.k, Expr::parse(&r.c)?.substitute(&lookup))))
            .collect()
    }

    /// Values outside the stated domain, if any.
    pub fn domain_violation(&self, values: &[GaussianRational]) -> Result<Option<(String, String)>> {
        for (slot, v) in self.params.iter().zip(values) {
            for x in &slot.exclude {
                if Expr::parse(x)?.eval_constant()? == *v {
                    return Ok(Some((slot.symbol.clone(), v.to_string())));
                }
            }
        }
        Ok(None)
    }

    pub fn instantiate(&self, values: &[GaussianRational]) -> Result<StructureConstants> {
        self.check_count(values.len())?;
        if let Some((symbol, value)) = self.domain_violation(values)? {
            return Err(Error::ParameterOutOfDomain {
                id: self.id.clone(),
                symbol,
                value,
            });
        }
        let lookup = |s: Symbol<'_>| match s {
            Symbol::Param(p) => self
                .params
                .iter()
                .position(|slot| slot.symbol == p)
                .map(|i| values[i].clone()),
            _ => None,
        };
        let mut products = Vec::with_capacity(self.entries.len());
        for r in &self.entries {
            let c = Expr::parse(&r.c)?.eval_exact(&lookup)?;
            if !c.is_zero() {
                products.push((r.i, r.j, r.k, c));
            }
        }
        StructureConstants::from_products(self.instance_name(values), self.dim, &products)
    }

    /// `∂c_ij^k/∂p` at `values` for each parameter `p`, flattened as
    /// `(i n + j) n + k` with 0-based indices.
    pub fn partials(&self, values: &[GaussianRational]) -> Result<Vec<Vec<GaussianRational>>> {
        self.check_count(values.len())?;
        let n = self.dim;
        let lookup = |s: Symbol<'_>| match s {
            Symbol::Param(p) => self
                .params
                .iter()
                .position(|slot| slot.symbol == p)
                .map(|i| values[i].clone()),
            _ => None,
        };
        let parsed = self
            .entries
            .iter()
            .map(|r| Ok((r.i, r.j, r.k, Expr::parse(&r.c)?)))
            .collect::<Result<Vec<_>>>()?;
        self.params
            .iter()
            .map(|slot| {
                let mut v = vec![GaussianRational::zero(); n * n * n];
                for (i, j, k, c) in &parsed {
                    v[((i - 1) * n + j - 1) * n + k - 1] += &c.derivative(&slot.symbol).eval_exact(&lookup)?;
                }
                Ok(v)
            })
            .collect()
    }

    pub fn instance_name(&self, values: &[GaussianRational]) -> String {
        match values {
            [] => self.id.clone(),
            [v] => format!("{}^{v}", self.id),
            vs => format!(
                "{}^{{{}}}",
                self.id,
                vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
            ),
        }
    }

    /// Parameter tuples used by the suite: the standard sample set for
    /// one-parameter families, seeded random tuples for the component
    /// families, and the empty tuple otherwise.
    pub fn samples(&self, seed: u64, random_tuples: usize) -> Result<Vec<Vec<GaussianRational>>> {
        if self.params.is_empty() {
            return Ok(vec![Vec::new()]);
        }
        let mut out = Vec::new();
        if self.params.len() == 1 && !self.has_tag("component-family") {
            for v in family_sample_values() {
                let tuple = vec![v];
                if self.domain_violation(&tuple)?.is_none() {
                    out.push(tuple);
                }
            }
            return Ok(out);
        }
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ stable_hash(&self.id));
        while out.len() < random_tuples {
            let tuple: Vec<GaussianRational> = self
                .params
                .iter()
                .map(|_| gq_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
                .collect();
            if self.domain_violation(&tuple)?.is_none() {
                out.push(tuple);
            }
        }
        Ok(out)
    }
}

/// Stable string hash so that each family gets its own random stream.
pub(crate) fn stable_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        let c = Catalog::shipped();
        let z05 = c.get("Z_05", &[]).unwrap();
        assert_eq!(z05.entries().len(), 6);
        assert_eq!(*z05.get(2, 0, 4), gq(2));
        let z02 = c.resolve("Z_02^3", None).unwrap();
        assert_eq!(*z02.get(3, 2, 4), gq(3));
        assert_eq!(c.resolve("zero", Some(4)).unwrap(), StructureConstants::zero(4));
        assert!(matches!(c.resolve("Z_99", None), Err(Error::UnknownAlgebra(_))));
        assert!(matches!(
            c.get("Z_30", &[gq(-1)]),
            Err(Error::ParameterOutOfDomain { .. })
        ));
        assert!(matches!(c.get("Z_02", &[]), Err(Error::ParameterCount { .. })));
        assert_eq!(c.resolve("N_14^-1/2", None).unwrap().get(1, 0, 3), &gq_ratio(-1, 2));
        assert_eq!(c.resolve("V_{4+1}^{2,3}", None).unwrap().get(3, 2, 4), &gq(3));
    }

    #[test]
    fn listings() {
        let c = Catalog::shipped();
        assert_eq!(c.list(&["theorem-a"]).len(), 59);
        assert_eq!(c.list(&["theorem-a", "one-parameter-family"]).len(), 6);
        assert_eq!(c.list(&["component-family"]), vec!["V_{4+1}", "V_{3+2}", "V_{2+3}"]);
        assert_eq!(c.list(&[]).len(), c.entries().len());
    }

    #[test]
    fn tables_round_trip() {
        let c = Catalog::shipped();
        let first = c.to_texts().unwrap();
        let texts: Vec<&str> = first.iter().map(|(_, t)| t.as_str()).collect();
        let again = Catalog::from_texts(texts.try_into().unwrap()).unwrap();
        assert_eq!(&again, c);
        assert_eq!(again.to_texts().unwrap(), first);
    }

    #[test]
    fn samples_respect_domains() {
        let c = Catalog::shipped();
        let z30 = c.entry("Z_30").unwrap().samples(0, 5).unwrap();
        assert_eq!(z30.len(), 6);
        let v = c.entry("V_{3+2}").unwrap().samples(7, 5).unwrap();
        assert_eq!(v.len(), 5);
        assert!(v.iter().all(|t| t.len() == 8));
        assert_eq!(v, c.entry("V_{3+2}").unwrap().samples(7, 5).unwrap());
    }

    #[test]
    fn certificate_with_index_and_free_symbol() {
        let c = Catalog::shipped();
        let rec = c
            .certificates
            .certificates
            .iter()
            .find(|r| r.target.id == "Z_10")
            .unwrap();
        assert!(c.certificate(rec, None).is_err());
        let cert = c.certificate(rec, Some(&gq(3))).unwrap();
        assert_eq!(cert.target, c.get("Z_10", &[gq(3)]).unwrap());
        assert!(cert.source.iter().any(|(_, _, _, e)| e.contains(&|x| *x == Expr::T)));
    }
}
