//! The chapters of the guide in `book/src`, included as documentation so
//! that `cargo test` runs every Rust code block in them.

macro_rules! chapter {
    ($name:ident, $file:literal) => {
        #[doc = include_str!(concat!("../../../book/src/", $file))]
        pub mod $name {}
    };
}

chapter!(introduction, "introduction.md");
chapter!(exact_linear_algebra, "exact-linear-algebra.md");
chapter!(quadratic_spaces, "quadratic-spaces.md");
chapter!(affine_isometries, "affine-isometries.md");
chapter!(block_forms, "block-forms.md");
chapter!(fixed_points, "fixed-points.md");
chapter!(centralizers, "centralizers.md");
chapter!(low_dimensional, "low-dimensional.md");
chapter!(nilpotent_realizations, "nilpotent-realizations.md");
chapter!(cli, "cli.md");
chapter!(file_formats, "file-formats.md");
