use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pairstego::{save_pgm, GrayImage};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pairstego"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn textured(w: usize, h: usize) -> GrayImage {
    GrayImage::from_fn(w, h, |x, y| ((x * 37 + y * 91 + (x * y) % 23) % 256) as u8)
}

fn write_image(dir: &TempDir, name: &str, img: &GrayImage) -> PathBuf {
    let path = dir.path().join(name);
    save_pgm(img, &path).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn embed_extract_roundtrip_all_methods() {
    let dir = TempDir::new().unwrap();
    let cover = write_image(&dir, "cover.pgm", &textured(64, 64));
    let payload = dir.path().join("msg.bin");
    let secret: Vec<u8> = (0..200u32).map(|i| (i * 7 + 3) as u8).collect();
    fs::write(&payload, &secret).unwrap();
    let before = fs::read(&cover).unwrap();

    for method in ["pvd", "glm", "hybrid"] {
        let stego = dir.path().join(format!("{method}.pgm"));
        let back = dir.path().join(format!("{method}.out"));
        let out = run(&[
            "embed",
            "--method",
            method,
            "--cover",
            s(&cover),
            "--payload",
            s(&payload),
            "--out",
            s(&stego),
        ]);
        assert!(
            out.status.success(),
            "{method}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(stdout(&out).contains("bits embedded"));
        assert!(stdout(&out).contains("psnr"));

        let out = run(&[
            "extract",
            "--method",
            method,
            "--stego",
            s(&stego),
            "--out",
            s(&back),
        ]);
        assert!(out.status.success(), "{method}");
        assert_eq!(fs::read(&back).unwrap(), secret, "{method}");
    }
    assert_eq!(fs::read(&cover).unwrap(), before);
}

#[test]
fn glm_selector_and_range_table_options() {
    let dir = TempDir::new().unwrap();
    let cover = write_image(&dir, "cover.pgm", &textured(32, 32));
    let payload = dir.path().join("msg.bin");
    fs::write(&payload, b"strided").unwrap();
    let stego = dir.path().join("s.pgm");
    let back = dir.path().join("back.bin");

    let out = run(&[
        "embed",
        "--method",
        "glm",
        "--selector",
        "stride:3:1",
        "--cover",
        s(&cover),
        "--payload",
        s(&payload),
        "--out",
        s(&stego),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "extract",
        "--method",
        "glm",
        "--selector",
        "stride:3:1",
        "--stego",
        s(&stego),
        "--out",
        s(&back),
    ]);
    assert!(out.status.success());
    assert_eq!(fs::read(&back).unwrap(), b"strided");

    let table = dir.path().join("table.txt");
    fs::write(
        &table,
        "# narrow ranges\n0 3\n4 7\n8 15\n16 31\n32 63\n64 127\n128 255\n",
    )
    .unwrap();
    let out = run(&[
        "embed",
        "--method",
        "pvd",
        "--range-table",
        s(&table),
        "--cover",
        s(&cover),
        "--payload",
        s(&payload),
        "--out",
        s(&stego),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "extract",
        "--method",
        "pvd",
        "--range-table",
        s(&table),
        "--stego",
        s(&stego),
        "--out",
        s(&back),
    ]);
    assert!(out.status.success());
    assert_eq!(fs::read(&back).unwrap(), b"strided");
}

#[test]
fn method_specific_options_are_rejected() {
    let dir = TempDir::new().unwrap();
    let cover = write_image(&dir, "cover.pgm", &textured(8, 8));
    let table = dir.path().join("table.txt");
    fs::write(&table, "0 255\n").unwrap();

    let out = run(&[
        "capacity",
        "--method",
        "pvd",
        "--selector",
        "all",
        "--cover",
        s(&cover),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&[
        "capacity",
        "--method",
        "glm",
        "--range-table",
        s(&table),
        "--cover",
        s(&cover),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&[
        "capacity",
        "--method",
        "glm",
        "--seed",
        "3",
        "--cover",
        s(&cover),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["capacity", "--method", "lsb", "--cover", s(&cover)]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&[
        "capacity",
        "--method",
        "glm",
        "--selector",
        "stride:0:0",
        "--cover",
        s(&cover),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn capacity_exceeded_exits_2() {
    let dir = TempDir::new().unwrap();
    let cover = write_image(&dir, "cover.pgm", &textured(16, 16));
    let payload = dir.path().join("big.bin");
    fs::write(&payload, vec![0xA5; 4096]).unwrap();
    let stego = dir.path().join("s.pgm");
    for method in ["pvd", "glm", "hybrid"] {
        let out = run(&[
            "embed",
            "--method",
            method,
            "--cover",
            s(&cover),
            "--payload",
            s(&payload),
            "--out",
            s(&stego),
        ]);
        assert_eq!(out.status.code(), Some(2), "{method}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.contains("capacity"), "{err}");
        assert!(out.stdout.is_empty());
    }
    assert!(!stego.exists());
}

#[test]
fn sixteen_bit_cover_exits_1() {
    let dir = TempDir::new().unwrap();
    let cover = dir.path().join("deep.pgm");
    let mut bytes = b"P5\n2 2\n65535\n".to_vec();
    bytes.extend_from_slice(&[0; 8]);
    fs::write(&cover, bytes).unwrap();
    let payload = dir.path().join("msg.bin");
    fs::write(&payload, b"").unwrap();
    let out = run(&[
        "embed",
        "--method",
        "hybrid",
        "--cover",
        s(&cover),
        "--payload",
        s(&payload),
        "--out",
        s(&dir.path().join("s.pgm")),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("65535"));
}

#[test]
fn wrong_method_on_extract_exits_3() {
    let dir = TempDir::new().unwrap();
    let cover = write_image(&dir, "cover.pgm", &textured(64, 64));
    let payload = dir.path().join("msg.bin");
    let stego = dir.path().join("s.pgm");
    // a payload long enough to reach the parity phase, which disturbs the
    // differences the pvd reader sees
    let pvd_cap = pairstego::pvd_capacity(&textured(64, 64), &Default::default());
    let mut len = pvd_cap / 8 + 100;
    loop {
        let bytes: Vec<u8> = (0..len).map(|i| (i * 131 + 17) as u8).collect();
        fs::write(&payload, bytes).unwrap();
        let out = run(&[
            "embed",
            "--method",
            "hybrid",
            "--cover",
            s(&cover),
            "--payload",
            s(&payload),
            "--out",
            s(&stego),
        ]);
        if out.status.success() {
            break;
        }
        assert_eq!(out.status.code(), Some(2));
        len -= 20;
        assert!(len * 8 > pvd_cap);
    }
    let out = run(&[
        "extract",
        "--method",
        "pvd",
        "--stego",
        s(&stego),
        "--out",
        s(&dir.path().join("x.bin")),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn empty_payload_roundtrip() {
    let dir = TempDir::new().unwrap();
    let cover = write_image(&dir, "cover.pgm", &textured(8, 8));
    let payload = dir.path().join("empty.bin");
    fs::write(&payload, b"").unwrap();
    let stego = dir.path().join("s.pgm");
    let back = dir.path().join("back.bin");
    for method in ["pvd", "glm", "hybrid"] {
        assert!(run(&[
            "embed",
            "--method",
            method,
            "--cover",
            s(&cover),
            "--payload",
            s(&payload),
            "--out",
            s(&stego),
        ])
        .status
        .success());
        assert!(run(&[
            "extract",
            "--method",
            method,
            "--stego",
            s(&stego),
            "--out",
            s(&back)
        ])
        .status
        .success());
        assert_eq!(fs::read(&back).unwrap(), b"");
    }
}

#[test]
fn capacity_outputs() {
    let dir = TempDir::new().unwrap();
    let uniform = write_image(&dir, "u.pgm", &GrayImage::filled(512, 512, 128));
    let out = run(&["capacity", "--method", "glm", "--cover", s(&uniform)]);
    assert!(stdout(&out).contains("bits: 262144"));
    let out = run(&["capacity", "--method", "pvd", "--cover", s(&uniform)]);
    assert!(stdout(&out).contains("bits: 393216"));
    assert!(stdout(&out).contains("bytes: 49152"));

    let tiny = write_image(&dir, "t.pgm", &GrayImage::filled(1, 1, 7));
    let out = run(&["capacity", "--method", "pvd", "--cover", s(&tiny)]);
    assert!(stdout(&out).contains("bits: 0"));

    let out = run(&[
        "capacity",
        "--method",
        "hybrid",
        "--seed",
        "11",
        "--cover",
        s(&uniform),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("seed: 11"));

    let bad = dir.path().join("bad.pgm");
    fs::write(&bad, b"P2\n1 1\n255\n0\n").unwrap();
    let out = run(&["capacity", "--method", "pvd", "--cover", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn quality_outputs() {
    let dir = TempDir::new().unwrap();
    let a = write_image(&dir, "a.pgm", &GrayImage::filled(4, 4, 10));
    let b = write_image(&dir, "b.pgm", &GrayImage::filled(4, 4, 11));
    let c = write_image(&dir, "c.pgm", &GrayImage::filled(4, 3, 10));

    let out = run(&["quality", "--cover", s(&a), "--stego", s(&a)]);
    assert!(stdout(&out).contains("psnr: inf"));
    assert!(stdout(&out).contains("mse: 0.000000"));
    let out = run(&["quality", "--cover", s(&a), "--stego", s(&b)]);
    assert!(stdout(&out).contains("psnr: 48.13"), "{}", stdout(&out));
    let out = run(&["quality", "--cover", s(&a), "--stego", s(&c)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bench_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let images = dir.path().join("images");
    fs::create_dir(&images).unwrap();
    save_pgm(&textured(32, 32), images.join("b.pgm")).unwrap();
    save_pgm(
        &GrayImage::from_fn(24, 16, |x, y| (x * 9 + y) as u8),
        images.join("a.pgm"),
    )
    .unwrap();
    fs::write(images.join("notes.txt"), "ignored").unwrap();

    let csv1 = dir.path().join("one.csv");
    let csv2 = dir.path().join("two.csv");
    let out = run(&["bench", s(&images), "--seed", "9", "--csv", s(&csv1)]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("hybrid"));
    assert!(
        run(&["bench", s(&images), "--seed", "9", "--csv", s(&csv2)])
            .status
            .success()
    );
    let text = fs::read_to_string(&csv1).unwrap();
    assert_eq!(text, fs::read_to_string(&csv2).unwrap());

    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "image,method,capacity_bits,psnr_db,seed");
    assert_eq!(lines.len(), 1 + 2 * 3);
    assert!(lines[1].starts_with("a,pvd,"));
    assert!(lines[4].starts_with("b,pvd,"));
    assert!(lines[6].starts_with("b,hybrid,") && lines[6].ends_with(",9"));

    let out = run(&["bench", s(&images), "--seed", "9"]);
    assert_eq!(stdout(&out), text);
}

#[test]
fn bench_empty_dir_exits_1() {
    let dir = TempDir::new().unwrap();
    let out = run(&["bench", s(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn gray_converts_ppm() {
    let dir = TempDir::new().unwrap();
    let ppm = dir.path().join("c.ppm");
    let mut bytes = b"P6\n2 1\n255\n".to_vec();
    bytes.extend_from_slice(&[255, 255, 255, 0, 0, 0]);
    fs::write(&ppm, bytes).unwrap();
    let pgm = dir.path().join("c.pgm");
    assert!(run(&["gray", "--in", s(&ppm), "--out", s(&pgm)])
        .status
        .success());
    assert_eq!(fs::read(&pgm).unwrap(), b"P5\n2 1\n255\n\xff\x00");
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["embed"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
