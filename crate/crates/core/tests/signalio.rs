mod common;

use common::*;
use gtfa_core::limits::{q_z_distribution, ZSignal};
use gtfa_core::signalio::*;
use gtfa_core::transforms::{born_jordan_cyclic_kernel, born_jordan_distribution_cyclic};
use gtfa_core::{AmbiguityFunction, Error, GroupOperator, Signal, TFFunction};

/// 44-byte canonical header, little endian, written out field by field.
fn header(format: u16, channels: u16, rate: u32, bits: u16, data_len: u32) -> Vec<u8> {
    let block = channels * bits / 8;
    let mut h = Vec::new();
    h.extend_from_slice(b"RIFF");
    h.extend_from_slice(&(36 + data_len).to_le_bytes());
    h.extend_from_slice(b"WAVEfmt ");
    h.extend_from_slice(&16u32.to_le_bytes());
    h.extend_from_slice(&format.to_le_bytes());
    h.extend_from_slice(&channels.to_le_bytes());
    h.extend_from_slice(&rate.to_le_bytes());
    h.extend_from_slice(&(rate * block as u32).to_le_bytes());
    h.extend_from_slice(&block.to_le_bytes());
    h.extend_from_slice(&bits.to_le_bytes());
    h.extend_from_slice(b"data");
    h.extend_from_slice(&data_len.to_le_bytes());
    h
}

#[test]
fn eight_sample_fixture() {
    #[rustfmt::skip]
    let bytes: Vec<u8> = vec![
        b'R', b'I', b'F', b'F', 52, 0, 0, 0, b'W', b'A', b'V', b'E',
        b'f', b'm', b't', b' ', 16, 0, 0, 0, 1, 0, 1, 0,
        0x40, 0x1f, 0, 0, 0x80, 0x3e, 0, 0, 2, 0, 16, 0,
        b'd', b'a', b't', b'a', 16, 0, 0, 0,
        0x00, 0x00, // 0
        0x00, 0x40, // 16384
        0xff, 0x7f, // 32767
        0x00, 0x80, // -32768
        0x00, 0xc0, // -16384
        0x01, 0x00, // 1
        0xff, 0xff, // -1
        0x00, 0x20, // 8192
    ];
    let w = parse_wav_mono16::<f64>(&bytes).unwrap();
    assert_eq!(w.sample_rate, 8000);
    assert_eq!(w.signal.offset, 0);
    let want = [0.0, 0.5, 32767.0 / 32768.0, -1.0, -0.5, 1.0 / 32768.0, -1.0 / 32768.0, 0.25];
    assert_eq!(w.signal.len(), 8);
    for (z, w) in w.signal.values.iter().zip(want) {
        assert_eq!(*z, c(w, 0.0));
    }
}

#[test]
fn speech_sized_file() {
    let mut bytes = header(1, 1, 4000, 16, 2000);
    for i in 0..1000u16 {
        bytes.extend_from_slice(&(i as i16 - 500).to_le_bytes());
    }
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("speech.wav");
    std::fs::write(&p, &bytes).unwrap();
    let w = read_wav_mono16::<f64>(&p).unwrap();
    assert_eq!(w.sample_rate, 4000);
    assert_eq!(w.signal.len(), 1000);
    assert_eq!(w.signal.values[0], c(-500.0 / 32768.0, 0.0));
}

#[test]
fn extra_chunks_are_skipped() {
    let mut bytes = header(1, 1, 8000, 16, 2);
    // splice a LIST chunk with an odd length (padded) between fmt and data
    let data = bytes.split_off(36);
    bytes.extend_from_slice(b"LIST");
    bytes.extend_from_slice(&3u32.to_le_bytes());
    bytes.extend_from_slice(&[1, 2, 3, 0]);
    bytes.extend_from_slice(&data);
    bytes.extend_from_slice(&[0x00, 0x10]);
    let w = parse_wav_mono16::<f64>(&bytes).unwrap();
    assert_eq!(w.signal.values, vec![c(4096.0 / 32768.0, 0.0)]);
}

#[test]
fn unsupported_formats() {
    let stereo = header(1, 2, 8000, 16, 4).into_iter().chain([0; 4]).collect::<Vec<u8>>();
    assert!(matches!(parse_wav_mono16::<f64>(&stereo), Err(Error::UnsupportedFormat(_))));
    let float = header(3, 1, 8000, 32, 4).into_iter().chain([0; 4]).collect::<Vec<u8>>();
    assert!(matches!(parse_wav_mono16::<f64>(&float), Err(Error::UnsupportedFormat(_))));
    let eight = header(1, 1, 8000, 8, 2).into_iter().chain([0; 2]).collect::<Vec<u8>>();
    assert!(matches!(parse_wav_mono16::<f64>(&eight), Err(Error::UnsupportedFormat(_))));
    assert!(matches!(parse_wav_mono16::<f64>(b"RIFX\0\0\0\0WAVE"), Err(Error::UnsupportedFormat(_))));
}

#[test]
fn truncated_files() {
    let mut short = header(1, 1, 8000, 16, 8);
    short.extend_from_slice(&[0; 5]);
    assert!(matches!(parse_wav_mono16::<f64>(&short), Err(Error::TruncatedFile)));
    let h = header(1, 1, 8000, 16, 0);
    assert!(matches!(parse_wav_mono16::<f64>(&h[..30]), Err(Error::TruncatedFile)));
    assert!(matches!(parse_wav_mono16::<f64>(b"RIFF"), Err(Error::TruncatedFile)));
}

#[test]
fn signal_csv_round_trip_is_bit_exact() {
    let g = dihedral(4);
    let u = Signal::random(&g, &mut rng(90));
    let text = format_csv_signal(&u);
    assert_eq!(text.lines().count(), 8);
    assert!(!text.contains('\r'));
    let back = parse_csv_signal(&text, &g).unwrap();
    assert_eq!(back.values(), u.values());
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("u.csv");
    write_csv_signal(&p, &u).unwrap();
    assert_eq!(read_csv_signal(&p, &g).unwrap().values(), u.values());
    // nothing but the target is left behind
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn signal_csv_formatting() {
    let g = cyclic(2);
    let u = Signal::new(g, vec![c(0.1, -2.0), c(0.0, 1e-300)]).unwrap();
    assert_eq!(
        format_csv_signal(&u),
        "0,1.0000000000000001e-1,-2.0000000000000000e0\n1,0.0000000000000000e0,1.0000000000000000e-300\n"
    );
}

#[test]
fn signal_csv_errors() {
    let g = cyclic(3);
    assert!(matches!(parse_csv_signal("0,1,0\n1,1,0\n", &g), Err(Error::RowCount { expected: 3, found: 2 })));
    assert!(matches!(parse_csv_signal("0,1,0\n1,1,0\n2,1.0.0,0\n", &g), Err(Error::Parse { line: 3, .. })));
    assert!(matches!(parse_csv_signal("0,1,0\n0,1,0\n2,1,0\n", &g), Err(Error::Parse { line: 2, .. })));
    assert!(matches!(parse_csv_signal("0,1,0\n1,1,0\n7,1,0\n", &g), Err(Error::Parse { line: 3, .. })));
    assert!(matches!(parse_csv_signal("0,1\n1,1,0\n2,1,0\n", &g), Err(Error::Parse { line: 1, .. })));
}

#[test]
fn scientific_notation_accepted() {
    let g = cyclic(3);
    let u = parse_csv_signal("2,3E2,-1e-3\n0,1.5e+0,0\n1, 2.5 ,0.0\n", &g).unwrap();
    assert_eq!(u.values(), &[c(1.5, 0.0), c(2.5, 0.0), c(300.0, -0.001)]);
}

#[test]
fn symbol_operator_kernel_round_trips() {
    for g in [cyclic(5), dihedral(3)] {
        let mut r = rng(91);
        let a = TFFunction::random(&g, &mut r);
        assert_eq!(parse_csv_symbol(&format_csv_symbol(&a), &g).unwrap().as_slice(), a.as_slice());
        let phi = AmbiguityFunction::random(&g, &mut r);
        let text = format_csv_kernel(&phi);
        assert!(text.starts_with("xi_index,y_index,row,col,re,im\n"));
        assert_eq!(parse_csv_kernel(&text, &g).unwrap().as_slice(), phi.as_slice());
        let b = GroupOperator::from_fn(&g, |x, y| c(x as f64 - 0.5 * y as f64, 1.0 / (1.0 + y as f64)));
        assert_eq!(parse_csv_operator(&format_csv_operator(&b), &g).unwrap().kernel(), b.kernel());
    }
    let g = dihedral(3);
    let bad = format_csv_kernel(&AmbiguityFunction::identity(&g)).replacen("xi_index", "xi", 1);
    assert!(matches!(parse_csv_kernel(&bad, &g), Err(Error::Parse { line: 1, .. })));
    let row_missing: String = format_csv_symbol(&TFFunction::identity(&g)).lines().skip(1).map(|l| format!("{l}\n")).collect();
    assert!(matches!(parse_csv_symbol(&row_missing, &g), Err(Error::RowCount { .. })));
}

#[test]
fn kernel_file_drives_a_transform() {
    let g = cyclic(6);
    let k = born_jordan_cyclic_kernel(&g).unwrap();
    let phi = parse_csv_kernel(&format_csv_kernel(k.phi()), &g).unwrap();
    assert_eq!(phi.as_slice(), k.phi().as_slice());
}

#[test]
fn grid_csv_uses_integer_times() {
    let u = ZSignal::from_real(-2, &[1.0, 2.0]);
    let q = q_z_distribution(&u, 3, true).unwrap();
    let text = format_csv_grid(&q);
    assert_eq!(text.lines().count(), 6);
    assert!(text.starts_with("-2,0,"));
    assert!(text.lines().nth(5).unwrap().starts_with("-1,2,"));
}

#[test]
fn pgm_shading() {
    let mid = ImageSpec::new(Shading::MidgreyZero, 2, 2);
    assert_eq!(pixels(&[0.0f64; 4], &mid).unwrap(), vec![128; 4]);
    assert_eq!(pixels(&[1.0, -1.0, 0.5, -0.25], &mid).unwrap(), vec![0, 255, 64, 159]);
    let white = ImageSpec::new(Shading::WhiteZero, 2, 1);
    assert_eq!(pixels(&[0.0, 7.0], &white).unwrap(), vec![255, 0]);
    assert_eq!(pixels(&[-1.0, -7.0], &white).unwrap(), vec![255, 255]);
    assert!(pixels(&[0.0f64; 3], &mid).is_err());
}

#[test]
fn pgm_file_layout() {
    let v: Vec<f64> = (0..40).map(|i| i as f64).collect();
    let s = render_pgm(&v, &ImageSpec::new(Shading::WhiteZero, 40, 1)).unwrap();
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("P2"));
    assert_eq!(lines.next(), Some("40 1"));
    assert_eq!(lines.next(), Some("255"));
    let body: Vec<&str> = lines.collect();
    assert!(body.len() > 1 && body.iter().all(|l| l.len() <= 70));
    let px: Vec<u32> = body.iter().flat_map(|l| l.split(' ')).map(|t| t.parse().unwrap()).collect();
    assert_eq!(px.len(), 40);
    assert_eq!((px[0], px[39]), (255, 0));
    assert!(s.ends_with('\n'));
}

#[test]
fn pgm_is_reproducible() {
    let g = cyclic(16);
    let u = Signal::random(&g, &mut rng(92));
    let q = born_jordan_distribution_cyclic(&u, &u).unwrap();
    let vals: Vec<f64> = (0..16).flat_map(|eta| (0..16).map(move |x| (eta, x))).map(|(eta, x)| q.block(x, eta)[0].re).collect();
    let spec = ImageSpec::new(Shading::MidgreyZero, 16, 16).with_gamma(0.5);
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.pgm"), dir.path().join("b.pgm"));
    write_pgm(&a, &vals, &spec).unwrap();
    write_pgm(&b, &vals, &spec).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn periodize_onto_cyclic_group() {
    let g = cyclic(4);
    let u = ZSignal::from_real(1, &[1.0, 2.0]);
    assert_eq!(periodize(&u, &g).unwrap().values(), &[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)]);
    let wide = ZSignal::from_real(0, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2.0]);
    assert_eq!(periodize(&wide, &g).unwrap().values()[3], c(2.0, 0.0));
    assert!(matches!(periodize(&u, &dihedral(3)), Err(Error::NotCyclic)));
}
