mod common;

use common::*;
use num_rational::Ratio;
use p2lsg::bitstream::{
    decode_unipolar, encode_level, read_bitfile, scc, sng_generate, write_bitfile, BitFileFormat, Bitstream,
    FixedUnipolar, Scc,
};
use p2lsg::media::merge::{merge_exact, merge_scene_sc, MergeAssignment};
use p2lsg::media::metrics::{psnr, ssim, Psnr};
use p2lsg::media::pnm::{read_pnm, write_pnm};
use p2lsg::media::scale::{scale_gray_sc, ScaleAssignment};
use p2lsg::media::{AlphaMap, GrayImage, Image, RgbImage};
use p2lsg::ops;
use p2lsg::p2lsg::{group_reverse, p2lsg_parallel, p2lsg_sequence, P2lsgConfig};
use p2lsg::par::Workers;
use p2lsg::sequences::radical::{gen_halton, gen_vdc};
use p2lsg::sequences::SequenceSpec;
use proptest::prelude::*;

/// `(group bits, counter bits)` with the group dividing the width.
fn dividing_config(max_bits: u32) -> impl Strategy<Value = (u32, u32)> {
    (1u32..=8).prop_flat_map(move |g| {
        let max_groups = (max_bits / g).max(1);
        (Just(g), 1..=max_groups).prop_map(|(g, k)| (g, g * k))
    })
}

fn stream(max_len: usize) -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), 1..=max_len)
}

fn reverse_bits(v: u64, n: u32) -> u64 {
    (0..n).fold(0, |r, b| r | ((v >> b) & 1) << (n - 1 - b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn full_period_is_a_permutation((g, n) in dividing_config(14)) {
        let mut seq = p2lsg_sequence(&P2lsgConfig::new(1 << g, n).unwrap(), 1 << n).unwrap();
        seq.sort_unstable();
        prop_assert!(seq.iter().copied().eq(0..1u64 << n));
    }

    #[test]
    fn base_two_is_bit_reversal(n in 1u32..=16, i in any::<u64>()) {
        let i = i % (1 << n);
        let seq = p2lsg_sequence(&P2lsgConfig::new(2, n).unwrap(), i + 1).unwrap();
        prop_assert_eq!(seq[i as usize], reverse_bits(i, n));
        prop_assert_eq!(Ratio::new(seq[i as usize] as u128, 1u128 << n), gen_vdc(2, i).unwrap());
    }

    #[test]
    fn double_reversal_is_identity((g, n) in dividing_config(60), v in any::<u64>()) {
        let v = v & ((1u64 << n) - 1);
        let once = group_reverse(v, n, 1 << g).unwrap();
        prop_assert_eq!(group_reverse(once, n, 1 << g).unwrap(), v);
    }

    #[test]
    fn parallel_flattens_to_serial(lanes in 1u32..=3, (g, n) in dividing_config(12)) {
        prop_assume!(lanes < n);
        let par = 1u64 << lanes;
        let serial = p2lsg_sequence(&P2lsgConfig::new(1 << g, n).unwrap(), 1 << n).unwrap();
        let config = P2lsgConfig::with_par(1 << g, n, par).unwrap();
        let flat = p2lsg_parallel(&config, (1 << n) / par).unwrap().concat();
        prop_assert_eq!(flat, serial);
    }

    #[test]
    fn base_two_prefixes_hit_every_dyadic_cell(n in 1u32..=14, k in 0u32..=14) {
        let k = k.min(n);
        let prefix = p2lsg_sequence(&P2lsgConfig::new(2, n).unwrap(), 1 << k).unwrap();
        let mut cells: Vec<u64> = prefix.iter().map(|v| v >> (n - k)).collect();
        cells.sort_unstable();
        prop_assert!(cells.iter().copied().eq(0..1u64 << k));
    }

    #[test]
    fn vdc_digit_blocks_are_permutations(base in 2u64..=12, m in 1u32..=4) {
        let count = base.pow(m);
        prop_assume!(count <= 4096);
        let scale = Ratio::from_integer(count as u128);
        let mut scaled: Vec<u128> = (0..count).map(|i| (gen_vdc(base, i).unwrap() * scale).to_integer()).collect();
        scaled.sort_unstable();
        prop_assert!(scaled.iter().copied().eq(0..count as u128));
    }

    #[test]
    fn halton_is_vdc(prime in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 31]), i in any::<u32>()) {
        prop_assert_eq!(gen_halton(prime, i as u64).unwrap(), gen_vdc(prime, i as u64).unwrap());
    }

    #[test]
    fn sobol_dimension_one_is_p2lsg_two(e in 1u32..=14) {
        let n = 1u64 << e;
        let bits = e.max(1);
        prop_assert_eq!(
            SequenceSpec::sobol(1).thresholds(n, bits).unwrap(),
            SequenceSpec::p2lsg(2).thresholds(n, bits).unwrap()
        );
    }

    #[test]
    fn specs_are_deterministic(
        text in prop::sample::select(vec![
            "p2lsg:base=16", "vdc:base=3", "halton:prime=11", "faure:prime=7,dim=1", "sobol:dim=5",
            "niederreiter:dim=3", "weyl:alpha=silver", "r2:dim=1", "lhs:seed=4", "poisson:seed=9", "lfsr:bits=9",
        ]),
        count in 1u64..200,
    ) {
        let spec: SequenceSpec = text.parse().unwrap();
        prop_assert_eq!(spec.unit_values(count).unwrap(), spec.unit_values(count).unwrap());
        let reparsed: SequenceSpec = spec.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, spec);
    }

    #[test]
    fn full_period_encoding_is_exact(g in prop::sample::select(vec![1u32, 2, 4, 8]), k in 0u64..256) {
        let thresholds = SequenceSpec::p2lsg(1 << g).thresholds(256, 8).unwrap();
        let s = sng_generate(FixedUnipolar::new(k, 8).unwrap(), &thresholds, 256).unwrap();
        prop_assert_eq!(decode_unipolar(&s), Ratio::new(k, 256));
    }

    #[test]
    fn scc_is_symmetric(bits in stream(300), seed in any::<u64>()) {
        let mut r = rng(seed);
        let other = random_bits(&mut r, bits.len());
        let (x, y) = (packed(&bits), packed(&other));
        prop_assert_eq!(scc(&x, &y).unwrap(), scc(&y, &x).unwrap());
    }

    #[test]
    fn scc_with_self_is_one(bits in stream(300)) {
        let s = packed(&bits);
        let constant = bits.iter().all(|&b| b) || bits.iter().all(|&b| !b);
        let got = scc(&s, &s).unwrap();
        if constant {
            prop_assert_eq!(got, Scc::Undefined);
        } else {
            prop_assert_eq!(got.value(), Some(Ratio::from_integer(1)));
        }
    }

    #[test]
    fn same_sequence_streams_fully_overlap(k1 in 1u64..256, k2 in 1u64..256, g in prop::sample::select(vec![1u32, 2, 4])) {
        let thresholds = SequenceSpec::p2lsg(1 << g).thresholds(256, 8).unwrap();
        let (a, b) = (encode_level(k1, &thresholds).unwrap(), encode_level(k2, &thresholds).unwrap());
        prop_assert_eq!(scc(&a, &b).unwrap().value(), Some(Ratio::from_integer(1)));
    }

    #[test]
    fn bitstream_text_and_files_round_trip(bits in stream(500)) {
        let s = packed(&bits);
        prop_assert_eq!(s.to_string().parse::<Bitstream>().unwrap(), s.clone());
        for format in [BitFileFormat::Ascii, BitFileFormat::Binary] {
            prop_assert_eq!(read_bitfile(&write_bitfile(&s, format), format).unwrap(), s.clone());
        }
    }

    #[test]
    fn mux2_counts_routed_ones(a in stream(300), seed in any::<u64>()) {
        let mut r = rng(seed);
        let (b, s) = (random_bits(&mut r, a.len()), random_bits(&mut r, a.len()));
        let out = ops::mux2(&packed(&a), &packed(&b), &packed(&s)).unwrap();
        let expected = (0..a.len()).filter(|&i| if s[i] { b[i] } else { a[i] }).count() as u64;
        prop_assert_eq!(out.count_ones(), expected);
    }

    #[test]
    fn mux4_with_constant_row_select_is_mux2(i11 in stream(300), seed in any::<u64>()) {
        let mut r = rng(seed);
        let len = i11.len();
        let [i12, i21, i22, u] = [0; 4].map(|_| random_bits(&mut r, len));
        let zeros = Bitstream::zeros(len).unwrap();
        let four = ops::mux4(&packed(&i11), &packed(&i12), &packed(&i21), &packed(&i22), &packed(&u), &zeros).unwrap();
        prop_assert_eq!(four, ops::mux2(&packed(&i11), &packed(&i21), &packed(&u)).unwrap());
    }

    #[test]
    fn scaling_by_one_is_identity(w in 1usize..12, h in 1usize..12, seed in any::<u64>(), e in 8u32..=10) {
        let img = noise_image(w, h, seed);
        let out = scale_gray_sc(&img, Ratio::from_integer(1), 1 << e, &ScaleAssignment::default(), Workers::sequential()).unwrap();
        prop_assert_eq!(out, img);
    }

    #[test]
    fn merge_stays_between_inputs(bg in any::<[u8; 3]>(), fg in any::<[u8; 3]>(), alpha in any::<u8>(), e in 8u32..=11) {
        let (bgi, fgi) = (RgbImage::new(1, 1, bg.to_vec()).unwrap(), RgbImage::new(1, 1, fg.to_vec()).unwrap());
        let a = AlphaMap::new(1, 1, vec![alpha]).unwrap();
        let out = merge_scene_sc(&bgi, &fgi, &a, 1 << e, &MergeAssignment::default(), Workers::sequential()).unwrap();
        for c in 0..3 {
            let v = out.pixels()[c];
            prop_assert!(bg[c].min(fg[c]) <= v && v <= bg[c].max(fg[c]), "{:?} {:?} {} -> {:?}", bg, fg, alpha, out.pixels());
        }
    }

    #[test]
    fn merge_error_bounded_at_representable_alpha(bg in any::<[u8; 3]>(), fg in any::<[u8; 3]>(), alpha in prop::sample::select(vec![0u8, 128, 255])) {
        let (bgi, fgi) = (RgbImage::new(1, 1, bg.to_vec()).unwrap(), RgbImage::new(1, 1, fg.to_vec()).unwrap());
        let a = AlphaMap::new(1, 1, vec![alpha]).unwrap();
        let out = merge_scene_sc(&bgi, &fgi, &a, 256, &MergeAssignment::default(), Workers::sequential()).unwrap();
        let exact = merge_exact(&bgi, &fgi, &a).unwrap();
        for (o, x) in out.pixels().iter().zip(exact.pixels()) {
            prop_assert!(o.abs_diff(*x) <= 1, "{:?} {:?} {} -> {:?} vs {:?}", bg, fg, alpha, out.pixels(), exact.pixels());
        }
    }

    #[test]
    fn psnr_falls_as_one_error_grows(pixels in prop::collection::vec(any::<u8>(), 16), at in 0usize..16, d in 1u8..=254) {
        let base = Image::Gray(GrayImage::new(4, 4, pixels.clone()).unwrap());
        prop_assert_eq!(psnr(&base, &base).unwrap(), Psnr::Infinite);
        let bumped = |step: u8| {
            let mut p = pixels.clone();
            p[at] = if p[at] >= 128 { p[at] - step.min(p[at]) } else { p[at] + step.min(255 - p[at]) };
            Image::Gray(GrayImage::new(4, 4, p).unwrap())
        };
        let reach = if pixels[at] >= 128 { pixels[at] } else { 255 - pixels[at] };
        prop_assume!(d < reach);
        let (near, far) = (psnr(&base, &bumped(d)).unwrap(), psnr(&base, &bumped(d + 1)).unwrap());
        prop_assert!(far.db() < near.db());
    }

    #[test]
    fn ssim_is_symmetric_and_bounded(seed in any::<u64>(), w in 8usize..14, h in 8usize..14) {
        let (a, b) = (noise_image(w, h, seed), noise_image(w, h, seed ^ 1));
        let (a, b) = (Image::Gray(a), Image::Gray(b));
        let (ab, ba) = (ssim(&a, &b).unwrap(), ssim(&b, &a).unwrap());
        prop_assert_eq!(ab, ba);
        prop_assert!((-1.0..=1.0).contains(&ab));
    }

    #[test]
    fn pnm_round_trips(w in 1usize..20, h in 1usize..20, seed in any::<u64>(), rgb in any::<bool>()) {
        let g = noise_image(w * if rgb { 3 } else { 1 }, h, seed);
        let img = if rgb {
            Image::Rgb(RgbImage::new(w, h, g.pixels().to_vec()).unwrap())
        } else {
            Image::Gray(g)
        };
        prop_assert_eq!(read_pnm(&write_pnm(&img)).unwrap(), img);
    }
}
