pub mod cyclotomic;
pub mod finite_field;
pub mod linalg;
pub mod poly;
pub mod ratfun;
pub mod rational;

pub use cyclotomic::CyclotomicNumber;
pub use finite_field::GaloisField;
pub use poly::MultivariatePolynomial;
pub use ratfun::RationalFunction;
pub use rational::Rational;
