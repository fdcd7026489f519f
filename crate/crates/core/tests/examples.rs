macro_rules! example {
    ($m:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $m {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(fraction_and_mirror, "fraction_and_mirror.rs");
example!(cover_homology, "cover_homology.rs");
example!(goeritz_tables, "goeritz_tables.rs");
example!(identity_suites, "identity_suites.rs");
example!(certificates, "certificates.rs");
example!(sign_elimination, "sign_elimination.rs");
example!(word_rewrites, "word_rewrites.rs");

#[test]
fn examples_run() {
    fraction_and_mirror::run().expect("fraction_and_mirror");
    cover_homology::run().expect("cover_homology");
    goeritz_tables::run().expect("goeritz_tables");
    identity_suites::run();
    certificates::run().expect("certificates");
    sign_elimination::run().expect("sign_elimination");
    word_rewrites::run().expect("word_rewrites");
}
