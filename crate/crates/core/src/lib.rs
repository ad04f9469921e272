//! Gender-bias auditing for generated professional documents.
//!
//! Three lenses are applied to a pair of document sets, one about men and one
//! about women:
//!
//! * lexical content — odds ratios of words and lexicon categories, and WEAT
//!   associations of the most salient words ([`lexical`]);
//! * language style — Welch tests on the share of formal, positive and
//!   agentic sentences ([`style`]);
//! * hallucination — sentences not entailed by the source context, and
//!   whether their style departs from the full document ([`hallucination`]).
//!
//! [`preprocess`] builds counterfactual context datasets and prompts;
//! [`audit`] runs everything from one configuration file.
//!
//! The numeric code is generic over [`num::Scalar`]; the aliases below fix it
//! to `f64`, which is what the audit pipeline uses.

pub mod audit;
pub mod corpus;
pub mod hallucination;
pub mod lexical;
pub mod num;
pub mod preprocess;
pub mod report;
pub mod scoring;
pub mod stats;
pub mod style;

pub type TTest = stats::TTest<f64>;
pub type OddsRatioResult = lexical::OddsRatioResult<f64>;
pub type OrValue = lexical::OrValue<f64>;
pub type SalientWords = lexical::SalientWords<f64>;
pub type EmbeddingTable = lexical::EmbeddingTable<f64>;
pub type WeatResult = lexical::WeatResult<f64>;
pub type StyleScore = style::StyleScore<f64>;
pub type BiasTestResult = style::BiasTestResult<f64>;
pub type HallucinationSamples = hallucination::HallucinationSamples<f64>;
pub type HallucinationBiasResult = hallucination::HallucinationBiasResult<f64>;
