//! Discrete power-spectral-density models of the signalling sources.
//!
//! Every source is reduced to a set of spectral lines (offset from the
//! carrier, power fraction) plus a residual-carrier fraction. Intensity
//! formats keep their carrier explicit because it is the coherent part the
//! crosstalk responds to; the modulated power follows a sinc² envelope
//! sampled on the PRBS comb.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Result, XtError};

use core::f64::consts::PI;

/// PRBS orders the pattern generator supports.
pub const SUPPORTED_PRBS_ORDERS: [u32; 8] = [7, 9, 10, 11, 15, 20, 23, 31];
/// QAM cardinalities the transmitter supports.
pub const SUPPORTED_QAM_ORDERS: [u32; 4] = [4, 16, 64, 256];
/// Baud range of the arbitrary waveform generator driving the QAM formats.
pub const QAM_BAUD_RANGE: (f64, f64) = (15e9, 80e9);

/// Default number of lines representing a broadband ASE source.
pub const DEFAULT_ASE_LINES: usize = 301;
/// Combs denser than this many one-sided lines are binned down.
const MAX_COMB_LINES: usize = 4097;
/// QAM combs sample the envelope on a fixed grid of baud/1024.
const QAM_GRID_DIVISOR: f64 = 1024.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    Cw,
    Ase,
    Ook,
    Pam4,
    Qam,
}

impl SourceKind {
    pub fn name(&self) -> &'static str {
        match self {
            SourceKind::Cw => "cw",
            SourceKind::Ase => "ase",
            SourceKind::Ook => "ook",
            SourceKind::Pam4 => "pam4",
            SourceKind::Qam => "qam",
        }
    }
}

/// One spectral line: offset from the optical carrier and its share of the
/// total power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralLine {
    pub offset_hz: f64,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SourceSpectrum {
    pub kind: SourceKind,
    /// Modulation lines, strictly increasing offsets. The residual carrier is
    /// carried separately in `carrier_fraction` (except for CW, whose single
    /// line at zero offset is the carrier).
    pub lines: Vec<SpectralLine>,
    pub carrier_fraction: f64,
    /// Symbol rate in baud; 0 for CW/ASE.
    pub baud: f64,
    /// PRBS order i (pattern length 2^i - 1); 0 when not applicable.
    pub prbs_order: u32,
    /// QAM cardinality m; 0 when not applicable.
    pub qam_order: u32,
    /// Reported transmitter OSNR, metadata only.
    pub osnr_db: Option<f64>,
    /// Granularity of the comb: the native line spacing, or the bin width
    /// after decimation. 0 for CW.
    pub bin_width_hz: f64,
}

impl SourceSpectrum {
    /// Enforces the structural invariants; every constructor runs this.
    pub fn validate(&self) -> Result<()> {
        let mut sum = self.carrier_fraction;
        let mut prev = f64::NEG_INFINITY;
        if !(0.0..=1.0).contains(&self.carrier_fraction) {
            return Err(XtError::config("carrier_fraction outside [0, 1]"));
        }
        for line in &self.lines {
            if line.fraction < 0.0 {
                return Err(XtError::config("negative line power"));
            }
            if line.offset_hz <= prev {
                return Err(XtError::config("line offsets not strictly increasing"));
            }
            prev = line.offset_hz;
            sum += line.fraction;
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(XtError::config(format!(
                "spectrum power sums to {sum}, expected 1"
            )));
        }
        match self.kind {
            SourceKind::Cw => {
                if self.lines.len() != 1
                    || self.lines[0].offset_hz != 0.0
                    || (self.lines[0].fraction - 1.0).abs() > 1e-12
                {
                    return Err(XtError::config(
                        "CW spectrum must be a single unit line at zero offset",
                    ));
                }
            }
            SourceKind::Qam => {
                if self.carrier_fraction != 0.0 {
                    return Err(XtError::config("QAM spectra are carrier-suppressed"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Total power in all lines plus the carrier; 1 by construction.
    pub fn total_power(&self) -> f64 {
        self.carrier_fraction + self.lines.iter().map(|l| l.fraction).sum::<f64>()
    }
}

/// Comb line spacing of a PRBS-modulated signal: baud / (2^i - 1).
pub fn prbs_line_spacing(baud: f64, prbs_order: u32) -> Result<f64> {
    if !(baud > 0.0) {
        return Err(XtError::config("baud must be > 0"));
    }
    if !SUPPORTED_PRBS_ORDERS.contains(&prbs_order) {
        return Err(XtError::config(format!(
            "unsupported PRBS order {prbs_order}; supported: {SUPPORTED_PRBS_ORDERS:?}"
        )));
    }
    Ok(baud / (2f64.powi(prbs_order as i32) - 1.0))
}

/// Carrier power share of an intensity format: the coherent (mean-field)
/// fraction of the total optical power for an equiprobable field alphabet.
fn alphabet_carrier_fraction(field_levels: &[f64]) -> f64 {
    let n = field_levels.len() as f64;
    let mean: f64 = field_levels.iter().sum::<f64>() / n;
    let mean_sq: f64 = field_levels.iter().map(|a| a * a).sum::<f64>() / n;
    mean * mean / mean_sq
}

fn sinc2(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let s = (PI * x).sin() / (PI * x);
    s * s
}

/// Integral of sinc² over [x0, x1] (Simpson; the integrand is smooth and the
/// bins are narrow).
fn sinc2_integral(x0: f64, x1: f64) -> f64 {
    const STEPS: usize = 8;
    let h = (x1 - x0) / (2 * STEPS) as f64;
    let mut acc = sinc2(x0) + sinc2(x1);
    for j in 1..(2 * STEPS) {
        let w = if j % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * sinc2(x0 + h * j as f64);
    }
    acc * h / 3.0
}

/// Builds a symmetric comb under the sinc² envelope, normalized to carry
/// `signal_fraction` of the total power.
///
/// Exact comb lines when the pattern admits it; otherwise equal-width bins
/// carrying the envelope-integrated power (the bin width lands in
/// `bin_width_hz` so the interference granularity stays visible).
fn sinc_comb(
    baud: f64,
    line_spacing_hz: f64,
    truncation_hz: f64,
    signal_fraction: f64,
) -> (Vec<SpectralLine>, f64) {
    let n_max = (truncation_hz / line_spacing_hz).floor() as u64;
    if n_max as usize <= MAX_COMB_LINES {
        // exact comb: lines at +-n * spacing, n = 1..n_max
        let mut weights = Vec::with_capacity(n_max as usize);
        let mut total = 0.0;
        for n in 1..=n_max {
            let f = n as f64 * line_spacing_hz;
            let w = sinc2(f / baud);
            weights.push((f, w));
            total += 2.0 * w;
        }
        let scale = signal_fraction / total;
        let mut lines = Vec::with_capacity(2 * weights.len());
        for &(f, w) in weights.iter().rev() {
            lines.push(SpectralLine {
                offset_hz: -f,
                fraction: w * scale,
            });
        }
        for &(f, w) in &weights {
            lines.push(SpectralLine {
                offset_hz: f,
                fraction: w * scale,
            });
        }
        (lines, line_spacing_hz)
    } else {
        // envelope-integrated bins, symmetric around (and excluding) 0
        let half_bins = (MAX_COMB_LINES - 1) / 2;
        let bin_width = truncation_hz / half_bins as f64;
        let mut weights = Vec::with_capacity(half_bins);
        let mut total = 0.0;
        for b in 0..half_bins {
            let f0 = b as f64 * bin_width;
            let f1 = f0 + bin_width;
            let w = sinc2_integral(f0 / baud, f1 / baud);
            weights.push((0.5 * (f0 + f1), w));
            total += 2.0 * w;
        }
        let scale = signal_fraction / total;
        let mut lines = Vec::with_capacity(2 * half_bins);
        for &(f, w) in weights.iter().rev() {
            lines.push(SpectralLine {
                offset_hz: -f,
                fraction: w * scale,
            });
        }
        for &(f, w) in &weights {
            lines.push(SpectralLine {
                offset_hz: f,
                fraction: w * scale,
            });
        }
        (lines, bin_width)
    }
}

fn check_truncation(baud: f64, truncation_hz: f64) -> Result<()> {
    if truncation_hz < 2.0 * baud {
        return Err(XtError::config(format!(
            "truncation bandwidth {truncation_hz:.3e} Hz below the second \
             envelope null (2 x baud = {:.3e} Hz)",
            2.0 * baud
        )));
    }
    Ok(())
}

/// NRZ on-off keying with a PRBS pattern of order `prbs_order`.
pub fn build_ook_spectrum(baud: f64, prbs_order: u32, truncation_hz: f64) -> Result<SourceSpectrum> {
    check_truncation(baud, truncation_hz)?;
    let spacing = prbs_line_spacing(baud, prbs_order)?;
    let carrier = alphabet_carrier_fraction(&[0.0, 1.0]);
    let (lines, bin_width) = sinc_comb(baud, spacing, truncation_hz, 1.0 - carrier);
    let s = SourceSpectrum {
        kind: SourceKind::Ook,
        lines,
        carrier_fraction: carrier,
        baud,
        prbs_order,
        qam_order: 0,
        osnr_db: None,
        bin_width_hz: bin_width,
    };
    s.validate()?;
    Ok(s)
}

/// Four-level PAM with equiprobable field amplitudes {0, 1/3, 2/3, 1}.
pub fn build_pam4_spectrum(baud: f64, prbs_order: u32, truncation_hz: f64) -> Result<SourceSpectrum> {
    check_truncation(baud, truncation_hz)?;
    let spacing = prbs_line_spacing(baud, prbs_order)?;
    let carrier = alphabet_carrier_fraction(&[0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0]);
    let (lines, bin_width) = sinc_comb(baud, spacing, truncation_hz, 1.0 - carrier);
    let s = SourceSpectrum {
        kind: SourceKind::Pam4,
        lines,
        carrier_fraction: carrier,
        baud,
        prbs_order,
        qam_order: 0,
        osnr_db: None,
        bin_width_hz: bin_width,
    };
    s.validate()?;
    Ok(s)
}

/// Carrier-suppressed m-QAM on a dense fixed grid (spacing baud/1024).
pub fn build_qam_spectrum(baud: f64, qam_order: u32, truncation_hz: f64) -> Result<SourceSpectrum> {
    if !SUPPORTED_QAM_ORDERS.contains(&qam_order) {
        return Err(XtError::config(format!(
            "unsupported QAM order {qam_order}; supported: {SUPPORTED_QAM_ORDERS:?}"
        )));
    }
    let (lo, hi) = QAM_BAUD_RANGE;
    if !(baud >= lo && baud <= hi) {
        return Err(XtError::config(format!(
            "QAM baud {baud:.3e} outside [{lo:.0e}, {hi:.0e}]"
        )));
    }
    check_truncation(baud, truncation_hz)?;
    let grid = baud / QAM_GRID_DIVISOR;
    let n_max = (truncation_hz / grid).floor() as i64;
    let mut raw = Vec::with_capacity((2 * n_max + 1) as usize);
    let mut total = 0.0;
    for n in -n_max..=n_max {
        let f = n as f64 * grid;
        let w = sinc2(f / baud);
        raw.push((f, w));
        total += w;
    }
    let lines = raw
        .into_iter()
        .map(|(f, w)| SpectralLine {
            offset_hz: f,
            fraction: w / total,
        })
        .collect();
    let osnr_db = match qam_order {
        4 => Some(48.6),
        256 => Some(46.3),
        _ => None,
    };
    let s = SourceSpectrum {
        kind: SourceKind::Qam,
        lines,
        carrier_fraction: 0.0,
        baud,
        prbs_order: 0,
        qam_order,
        osnr_db,
        bin_width_hz: grid,
    };
    s.validate()?;
    Ok(s)
}

/// Narrow-linewidth continuous-wave laser: one line, all the power.
pub fn build_cw_spectrum() -> SourceSpectrum {
    SourceSpectrum {
        kind: SourceKind::Cw,
        lines: alloc::vec![SpectralLine {
            offset_hz: 0.0,
            fraction: 1.0,
        }],
        carrier_fraction: 0.0,
        baud: 0.0,
        prbs_order: 0,
        qam_order: 0,
        osnr_db: None,
        bin_width_hz: 0.0,
    }
}

/// Broadband filtered ASE: `line_count` equal-power lines spanning the
/// bandwidth. A zero bandwidth collapses to a single line (CW-like).
pub fn build_ase_spectrum_with_lines(bandwidth_hz: f64, line_count: usize) -> Result<SourceSpectrum> {
    if bandwidth_hz < 0.0 {
        return Err(XtError::config("ASE bandwidth must be >= 0"));
    }
    if line_count == 0 {
        return Err(XtError::config("ASE needs at least one line"));
    }
    let lines = if bandwidth_hz == 0.0 || line_count == 1 {
        alloc::vec![SpectralLine {
            offset_hz: 0.0,
            fraction: 1.0,
        }]
    } else {
        let m = line_count;
        (0..m)
            .map(|j| SpectralLine {
                offset_hz: -0.5 * bandwidth_hz + bandwidth_hz * j as f64 / (m - 1) as f64,
                fraction: 1.0 / m as f64,
            })
            .collect()
    };
    let s = SourceSpectrum {
        kind: SourceKind::Ase,
        lines,
        carrier_fraction: 0.0,
        baud: 0.0,
        prbs_order: 0,
        qam_order: 0,
        osnr_db: None,
        bin_width_hz: if line_count > 1 {
            bandwidth_hz / (line_count - 1) as f64
        } else {
            0.0
        },
    };
    s.validate()?;
    Ok(s)
}

pub fn build_ase_spectrum(bandwidth_hz: f64) -> Result<SourceSpectrum> {
    build_ase_spectrum_with_lines(bandwidth_hz, DEFAULT_ASE_LINES)
}

/// Carrier-to-signal power ratio in dB; -inf for carrier-suppressed sources.
pub fn carrier_to_signal_ratio(spectrum: &SourceSpectrum) -> Result<f64> {
    let c = spectrum.carrier_fraction;
    if c >= 1.0 {
        return Err(XtError::domain(
            "carrier_to_signal_ratio undefined for a pure carrier",
        ));
    }
    if c == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(10.0 * (c / (1.0 - c)).log10())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prbs_spacing_values() {
        assert_eq!(prbs_line_spacing(25e9, 7).unwrap(), 25e9 / 127.0);
        let s = prbs_line_spacing(10e9, 15).unwrap();
        assert!((s - 10e9 / 32767.0).abs() < 1e-6);
        assert!((s - 305.2e3).abs() < 100.0);
        // strictly decreasing in the order
        let mut prev = f64::INFINITY;
        for &i in &SUPPORTED_PRBS_ORDERS {
            let v = prbs_line_spacing(25e9, i).unwrap();
            assert!(v < prev);
            prev = v;
        }
        assert!(prbs_line_spacing(25e9, 8).is_err());
        assert!(prbs_line_spacing(0.0, 7).is_err());
    }

    #[test]
    fn ook_carrier_and_normalization() {
        let s = build_ook_spectrum(25e9, 7, 50e9).unwrap();
        assert_eq!(s.carrier_fraction, 0.5);
        assert!((s.total_power() - 1.0).abs() < 1e-9);
        s.validate().unwrap();
    }

    #[test]
    fn ook_main_lobe_line_count_matches_pattern_length() {
        // one-sided count in [0, baud), carrier included, equals 2^i - 1
        for &i in &[7u32, 9, 10] {
            let s = build_ook_spectrum(25e9, i, 50e9).unwrap();
            let count = 1 + s
                .lines
                .iter()
                .filter(|l| l.offset_hz > 0.0 && l.offset_hz < 25e9)
                .count();
            assert_eq!(count as u64, (1u64 << i) - 1, "order {i}");
        }
    }

    #[test]
    fn denser_pattern_spreads_power() {
        let s7 = build_ook_spectrum(25e9, 7, 50e9).unwrap();
        let s9 = build_ook_spectrum(25e9, 9, 50e9).unwrap();
        assert!(s9.lines.len() > s7.lines.len());
        let max7 = s7.lines.iter().map(|l| l.fraction).fold(0.0, f64::max);
        let max9 = s9.lines.iter().map(|l| l.fraction).fold(0.0, f64::max);
        assert!(max9 < max7);
        assert!((s7.total_power() - 1.0).abs() < 1e-9);
        assert!((s9.total_power() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn truncation_below_second_null_is_rejected() {
        assert!(build_ook_spectrum(25e9, 7, 49e9).is_err());
    }

    #[test]
    fn pam4_carrier_from_alphabet_enumeration() {
        // independent enumeration of the {0, 1/3, 2/3, 1} field alphabet
        let levels = [0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0];
        let mean = levels.iter().sum::<f64>() / 4.0;
        let mean_sq = levels.iter().map(|a| a * a).sum::<f64>() / 4.0;
        let expected = mean * mean / mean_sq; // = 9/14
        assert!((expected - 9.0 / 14.0).abs() < 1e-15);

        let s = build_pam4_spectrum(25e9, 7, 50e9).unwrap();
        assert!((s.carrier_fraction - expected).abs() < 1e-12);
        let ook = build_ook_spectrum(25e9, 7, 50e9).unwrap();
        assert!(s.carrier_fraction > ook.carrier_fraction);
    }

    #[test]
    fn carrier_to_signal_ratios() {
        let ook = build_ook_spectrum(25e9, 7, 50e9).unwrap();
        assert!((carrier_to_signal_ratio(&ook).unwrap() - 0.0).abs() < 1e-12);

        let pam = build_pam4_spectrum(25e9, 7, 50e9).unwrap();
        let diff = carrier_to_signal_ratio(&pam).unwrap() - carrier_to_signal_ratio(&ook).unwrap();
        // measured difference is ~2 dB; the alphabet model gives 2.55 dB
        assert!((diff - 2.0).abs() < 1.0, "diff {diff}");

        let qam = build_qam_spectrum(40e9, 64, 80e9).unwrap();
        assert_eq!(carrier_to_signal_ratio(&qam).unwrap(), f64::NEG_INFINITY);

        let pure = SourceSpectrum {
            carrier_fraction: 1.0,
            lines: alloc::vec![],
            ..build_cw_spectrum()
        };
        assert!(carrier_to_signal_ratio(&pure).is_err());
    }

    #[test]
    fn qam_grid_properties() {
        for &m in &SUPPORTED_QAM_ORDERS {
            let s = build_qam_spectrum(40e9, m, 80e9).unwrap();
            assert_eq!(s.carrier_fraction, 0.0);
            assert!((s.total_power() - 1.0).abs() < 1e-9);
        }
        // doubling the baud doubles the occupied main-lobe width
        let a = build_qam_spectrum(40e9, 64, 80e9).unwrap();
        let b = build_qam_spectrum(80e9, 64, 160e9).unwrap();
        let span_a = a.lines.last().unwrap().offset_hz;
        let span_b = b.lines.last().unwrap().offset_hz;
        assert!((span_b / span_a - 2.0).abs() < 1e-12);

        assert!(build_qam_spectrum(40e9, 32, 80e9).is_err());
        assert!(build_qam_spectrum(10e9, 16, 20e9).is_err());
    }

    #[test]
    fn cw_and_ase_shapes() {
        let cw = build_cw_spectrum();
        assert_eq!(cw.lines.len(), 1);
        assert_eq!(cw.lines[0].offset_hz, 0.0);
        assert_eq!(cw.lines[0].fraction, 1.0);
        cw.validate().unwrap();

        let ase = build_ase_spectrum(150e9).unwrap();
        assert_eq!(ase.lines.len(), DEFAULT_ASE_LINES);
        for l in &ase.lines {
            assert!((l.fraction - 1.0 / 301.0).abs() < 1e-15);
            assert!(l.offset_hz.abs() <= 75e9 + 1.0);
        }

        let collapsed = build_ase_spectrum(0.0).unwrap();
        assert_eq!(collapsed.lines.len(), 1);
        assert_eq!(collapsed.lines[0].offset_hz, 0.0);
    }

    #[test]
    fn dense_patterns_are_binned() {
        for &i in &[15u32, 20, 31] {
            let s = build_ook_spectrum(25e9, i, 50e9).unwrap();
            assert!(s.lines.len() <= MAX_COMB_LINES, "order {i}: {}", s.lines.len());
            assert!((s.total_power() - 1.0).abs() < 1e-9, "order {i}");
            assert!(s.bin_width_hz > prbs_line_spacing(25e9, i).unwrap());
        }
        // exact combs keep the native spacing
        let s = build_ook_spectrum(25e9, 7, 50e9).unwrap();
        assert_eq!(s.bin_width_hz, 25e9 / 127.0);
    }

    proptest! {
        /// Envelope symmetry: built combs mirror exactly around 0.
        #[test]
        fn comb_symmetry(baud in 10e9f64..80e9, idx in 0usize..4) {
            let i = [7u32, 9, 11, 15][idx];
            let s = build_ook_spectrum(baud, i, 2.0 * baud).unwrap();
            let n = s.lines.len();
            prop_assert_eq!(n % 2, 0);
            for k in 0..n / 2 {
                let a = s.lines[k];
                let b = s.lines[n - 1 - k];
                prop_assert_eq!(a.fraction, b.fraction);
                prop_assert_eq!(a.offset_hz, -b.offset_hz);
            }
        }

        /// Every built spectrum passes its own invariants.
        #[test]
        fn construction_invariants(baud in 15e9f64..80e9) {
            build_ook_spectrum(baud, 9, 2.0 * baud).unwrap().validate().unwrap();
            build_pam4_spectrum(baud, 9, 2.0 * baud).unwrap().validate().unwrap();
            build_qam_spectrum(baud, 16, 2.0 * baud).unwrap().validate().unwrap();
        }
    }
}
