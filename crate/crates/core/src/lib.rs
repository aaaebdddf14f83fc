//! Translate plain-English process descriptions into workflow Petri nets and
//! rank reference process models against them by word-embedding and
//! structural similarity.

pub mod embeddings;
pub mod matcher;
pub mod model_io;
pub mod nlp;
pub mod petri;
pub mod translator;

pub use embeddings::{
    cosine, embed_label, load_embeddings, EmbeddingError, EmbeddingTable, LabelVector,
};
pub use matcher::{
    align_tasks, embedding_similarity, match_nets, rank_references, structure_similarity,
    MatchConfig, MatchReport, TaskAlignment,
};
pub use model_io::{
    export_dot, load_net, load_reference_library, save_net, AlignmentSide, Highlight, ModelIoError,
    ReferenceLibrary,
};
pub use nlp::{ActionPhrase, ConditionClause, NlpError, Sentence, Token};
pub use petri::{
    check_soundness, validate_workflow, Marking, PetriError, PetriNet, PlaceId, SoundnessReport,
    TransitionId, Verdict, WorkflowDiagnostics,
};
pub use translator::{translate, translate_named, TranslationResult, TranslationWarning};
