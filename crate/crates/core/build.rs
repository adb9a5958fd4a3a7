fn main() {
    // LAPACK symbols (zheevd, zgesvd) come from the system OpenBLAS build,
    // which bundles a full LAPACK.
    println!("cargo:rustc-link-lib=dylib=openblas");
}
