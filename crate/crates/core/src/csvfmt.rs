//! Shared CSV float formatting: full-precision scientific notation so that
//! identical inputs give byte-identical files, with a lowercase `nan`
//! sentinel for singular grid points.

pub(crate) fn float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else {
        format!("{x:.16e}")
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn round_trips_and_nan() {
        let x = -0.010557280900008412_f64;
        assert_eq!(super::float(x).parse::<f64>().unwrap(), x);
        assert_eq!(super::float(f64::NAN), "nan");
    }
}
