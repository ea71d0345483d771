//! CSV emission. Numbers use C's `%.17g`, which round-trips every `f64`.

use std::fmt::Write;

use tcl_core::PartitionResult;

/// `%.17g`: 17 significant digits, trailing zeros dropped, exponent form
/// outside `1e-4 ≤ |x| < 1e17`.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.into();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    } else {
        let fixed = format!("{x:.*}", (16 - exp) as usize);
        trim_fraction(&fixed).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub const PROPAGATE_HEADER: &str = "t,method,observable,value";
pub const PARTITION_HEADER: &str = "a_beta,z_exact,z_tcl2,z_dyson2,z_average";

/// One named column of samples sharing the time grid.
pub struct SeriesColumn<'a> {
    pub method: &'a str,
    pub values: &'a [f64],
}

/// Long-format CSV: times outer, methods inner, in the given order.
pub fn propagate_csv(times: &[f64], observable: &str, columns: &[SeriesColumn<'_>]) -> String {
    let mut out = String::with_capacity(64 * times.len() * columns.len().max(1));
    out.push_str(PROPAGATE_HEADER);
    out.push('\n');
    for (k, &t) in times.iter().enumerate() {
        for col in columns {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                format_float(t),
                col.method,
                observable,
                format_float(col.values[k])
            );
        }
    }
    out
}

pub fn partition_csv(rows: &[PartitionResult]) -> String {
    let mut out = String::from(PARTITION_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            format_float(r.a_beta),
            format_float(r.z_exact),
            format_float(r.z_tcl2),
            format_float(r.z_dyson2),
            format_float(r.z_average)
        );
    }
    out
}
