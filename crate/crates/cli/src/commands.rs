use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Signed;

use wps_core::enumeration::{count_points, EnumOptions};
use wps_core::function_field::{height, parse_coords};
use wps_core::{height_zeta, EnumerateMode, Field, Poly, Result, WeightVector, WeightedZeta};

use crate::config::{Format, RunConfig};
use crate::report::{a_table, fraction, CountReport, Row, ZetaReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Columns {
    Oracle,
    Predict,
    Both,
}

fn header(config: &RunConfig, hz: &WeightedZeta) -> CountReport {
    let zeta = hz.zeta_data();
    CountReport {
        q: config.curve.q(),
        weights: config.weights.weights().to_vec(),
        curve: config.curve.to_string(),
        h: zeta.h,
        g: zeta.g,
        numerator: zeta.numerator.clone(),
        d0: hz.d0(),
        zeta_values: crate::report::zeta_values(hz),
        a_table: a_table(hz),
        rows: Vec::new(),
    }
}

/// Rows for every d in the configured range with the requested columns.
pub fn count_report(config: &RunConfig, columns: Columns) -> Result<CountReport> {
    if columns != Columns::Predict {
        config.require_genus0("count")?;
    }
    let hz = height_zeta(&config.curve, &config.weights)?;
    let mut report = header(config, &hz);
    let opts = EnumOptions::with_cap(config.cap);
    for d in config.d.clone() {
        let oracle = match columns {
            Columns::Predict => None,
            _ => Some(count_points(&config.field, &config.weights, d, &opts)?),
        };
        let (exact, main, abs_error) = match columns {
            Columns::Oracle => (None, None, None),
            _ => {
                let exact = hz.ad_exact(d)?;
                if d >= 1 {
                    let main = hz.ad_main(d)?;
                    let err = (BigRational::from(BigInt::from(exact.clone())) - &main).abs();
                    (Some(exact), Some(fraction(&main)), Some(fraction(&err)))
                } else {
                    (Some(exact), Some("n/a".to_string()), Some("n/a".to_string()))
                }
            }
        };
        report.rows.push(Row {
            d,
            oracle: oracle.map(|n: BigUint| n.to_string()),
            exact: exact.map(|n| n.to_string()),
            main,
            abs_error,
            beyond_d0: d >= hz.d0(),
        });
    }
    Ok(report)
}

/// The first row whose oracle and exact columns are both present and differ.
pub fn first_mismatch(report: &CountReport) -> Option<String> {
    report.rows.iter().find_map(|r| match (&r.oracle, &r.exact) {
        (Some(o), Some(e)) if o != e => {
            Some(format!("mismatch at d = {}: enumeration gives {o}, formula gives {e}", r.d))
        }
        _ => None,
    })
}

pub fn zeta_report(config: &RunConfig) -> Result<ZetaReport> {
    let hz = height_zeta(&config.curve, &config.weights)?;
    let zeta = hz.zeta_data();
    Ok(ZetaReport {
        q: config.curve.q(),
        weights: config.weights.weights().to_vec(),
        curve: config.curve.to_string(),
        h: zeta.h,
        g: zeta.g,
        curve_zeta: zeta.z_function().to_string(),
        zw: hz.zw().to_string(),
        height_zeta: hz.height_zeta().to_string(),
        poly_part: hz.poly_part().to_string(),
        d0: hz.d0(),
        zeta_values: crate::report::zeta_values(&hz),
        a_table: a_table(&hz),
    })
}

pub fn factor(field: &Field, poly: &str, seed: u64, format: Format) -> Result<String> {
    let p = Poly::parse(field, poly)?;
    let fac = p.factor(seed)?;
    Ok(match format {
        Format::Table => format!("{fac}\n"),
        Format::Csv => {
            let mut out = String::from("factor,multiplicity\n");
            for (pi, e) in &fac.factors {
                out += &format!("{pi},{e}\n");
            }
            out
        }
        Format::Json => {
            let factors: Vec<serde_json::Value> = fac
                .factors
                .iter()
                .map(|(pi, e)| serde_json::json!({ "factor": pi.to_string(), "multiplicity": e }))
                .collect();
            let v = serde_json::json!({ "input": p.to_string(), "unit": fac.unit.to_string(), "factors": factors });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
    })
}

pub fn height_of(field: &Field, weights: &WeightVector, coords: &str, format: Format) -> Result<String> {
    let c = parse_coords(field, coords)?;
    let h = height(&c, weights)?;
    Ok(match format {
        Format::Table => format!("{h}\n"),
        Format::Csv => format!("height\n{h}\n"),
        Format::Json => format!("{}\n", serde_json::json!({ "height": h })),
    })
}

pub fn irreducibles(field: &Field, max_deg: usize, format: Format) -> String {
    let list = Poly::enumerate(field, EnumerateMode::MonicIrreducibleDegLe, max_deg);
    match format {
        Format::Table => list.iter().map(|p| format!("{p}\n")).collect(),
        Format::Csv => {
            let mut out = String::from("degree,poly\n");
            for p in &list {
                out += &format!("{},{p}\n", p.degree().unwrap());
            }
            out
        }
        Format::Json => {
            let v: Vec<String> = list.iter().map(|p| p.to_string()).collect();
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wps_core::CurveModel;

    fn config(q: u64, w: &[u32], d: std::ops::RangeInclusive<u64>) -> RunConfig {
        let field = Field::with_order(q).unwrap();
        RunConfig {
            curve: CurveModel::genus0(&field),
            field,
            weights: WeightVector::new(w.to_vec()).unwrap(),
            d,
            format: Format::Table,
            cap: 1_000_000,
        }
    }

    #[test]
    fn agreement_and_mismatch_detection() {
        let mut report = count_report(&config(2, &[1, 2], 0..=2), Columns::Both).unwrap();
        assert_eq!(first_mismatch(&report), None);
        report.rows[1].oracle = Some("23".into());
        let msg = first_mismatch(&report).unwrap();
        assert!(msg.contains("d = 1") && msg.contains("23") && msg.contains("22"), "{msg}");
    }

    #[test]
    fn predict_rows() {
        let report = count_report(&config(2, &[1, 2], 0..=3), Columns::Predict).unwrap();
        let exact: Vec<&str> = report.rows.iter().map(|r| r.exact.as_deref().unwrap()).collect();
        let main: Vec<&str> = report.rows.iter().map(|r| r.main.as_deref().unwrap()).collect();
        assert_eq!(exact, ["3", "22", "168", "1344"]);
        assert_eq!(main, ["n/a", "21/1", "168/1", "1344/1"]);
        assert!(report.rows.iter().all(|r| r.oracle.is_none()));
    }

    #[test]
    fn enumeration_needs_genus0() {
        let field = Field::prime(5).unwrap();
        let mut c = config(5, &[1, 1], 0..=1);
        c.curve = CurveModel::elliptic(&field, 1, 1).unwrap();
        assert!(count_report(&c, Columns::Oracle).is_err());
        assert!(count_report(&c, Columns::Predict).is_ok());
    }
}
