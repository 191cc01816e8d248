//! Number formatting and CSV emission.

use std::io::Write;

/// Formats like C's `%.12g`: twelve significant digits, trailing zeros
/// dropped, `inf`/`-inf`/`nan` spelled out.
pub fn format_value(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // the exponent after rounding, which can differ from floor(log10|x|)
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!(
            "{}e{sign}{:02}",
            trim_zeros(mantissa.to_string()),
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `count` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let last = (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i + 1 == count {
                        hi
                    } else {
                        lo + (hi - lo) * i as f64 / last
                    }
                })
                .collect()
        }
    }
}

/// Writes a header and rows of numbers, formatted with [`format_value`].
pub fn write_csv<W: Write>(out: W, header: &[&str], rows: &[Vec<f64>]) -> csv::Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(row.iter().map(|&v| format_value(v)))?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_value(0.143_841_036_225_890_46), "0.143841036226");
        assert_eq!(format_value(0.5), "0.5");
        assert_eq!(format_value(2.0), "2");
        assert_eq!(format_value(-1.25), "-1.25");
        assert_eq!(format_value(123_456.789_012_345), "123456.789012");
        assert_eq!(format_value(2.000_000_444_4e-6), "2.0000004444e-06");
        assert_eq!(format_value(1e15), "1e+15");
        assert_eq!(format_value(0.000_123), "0.000123");
        assert_eq!(format_value(9.999_999_999_999_9), "10");
    }

    #[test]
    fn special_values() {
        assert_eq!(format_value(f64::INFINITY), "inf");
        assert_eq!(format_value(f64::NEG_INFINITY), "-inf");
        assert_eq!(format_value(f64::NAN), "nan");
        assert_eq!(format_value(0.0), "0");
        assert_eq!(format_value(-0.0), "0");
    }

    #[test]
    fn linspace_is_inclusive() {
        assert_eq!(linspace(0.0, 1.0, 2), vec![0.0, 1.0]);
        assert_eq!(linspace(0.0, 0.1, 200).len(), 200);
        assert_eq!(*linspace(0.0, 0.1, 200).last().unwrap(), 0.1);
        assert_eq!(linspace(0.3, 0.9, 1), vec![0.3]);
    }

    #[test]
    fn csv_uses_lf_and_inf_token() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &["x", "y"], &[vec![0.5, f64::INFINITY]]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,y\n0.5,inf\n");
    }
}
