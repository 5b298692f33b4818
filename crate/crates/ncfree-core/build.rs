fn main() {
    // LAPACK (zgeqrf/zungqr/zgemm) backs the Haar sampling hot path.
    println!("cargo:rustc-link-lib=openblas");
}
