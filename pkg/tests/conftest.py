import pytest

from mathdup.corpus import CitationMarker, Corpus, Document, Formula, MathToken
from mathdup.citesim import normalize_reference


def make_doc(
    doc_id,
    body="",
    year=2000,
    title="Untitled study",
    authors=("A. Author",),
    journal=None,
    series=None,
    publisher=None,
    abstract="",
    language="en",
    formula_token_lists=(),
    reference_raws=(),
    marker_ordinals=(),
):
    """Document builder for tests; formulae sit at position 0 and citation
    markers at ascending positions, which satisfies the model invariants
    for any body."""
    formulae = tuple(
        Formula(
            raw=" ".join(v for _, v in toks),
            tokens=tuple(MathToken(k, v) for k, v in toks),
            position=0,
        )
        for toks in formula_token_lists
    )
    references = tuple(normalize_reference(r) for r in reference_raws)
    markers = tuple(
        CitationMarker(position=0, reference_ordinal=o) for o in marker_ordinals
    )
    return Document(
        id=doc_id,
        title=title,
        authors=tuple(authors),
        publication_year=year,
        language=language,
        abstract_text=abstract,
        body_text=body,
        journal=journal,
        series=series,
        publisher=publisher,
        formulae=formulae,
        references=references,
        citation_markers=markers,
    )


def corpus_of(*docs):
    corpus = Corpus()
    for doc in docs:
        corpus.documents[doc.id] = doc
    return corpus


@pytest.fixture
def tiny_corpus():
    return corpus_of(
        make_doc(
            "a1",
            body="the spectral radius of the operator is bounded above by one",
            year=1995,
            journal="Annals of Spectra",
            abstract="editorial remark on spectral bounds",
        ),
        make_doc(
            "b2",
            body="the spectral radius of the operator is bounded above by one exactly",
            year=2003,
            journal="IEEE Transactions on Things",
            publisher="AIP",
            abstract="a very similar overlap was found",
        ),
        make_doc(
            "c3",
            body="unrelated prose about combinatorial designs and block systems",
            year=2010,
            journal="Design Letters",
            series="00000250",
            abstract="fresh material throughout",
        ),
    )
