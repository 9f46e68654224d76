from fastapi import APIRouter

from ...schemas.frame import DiffsetRequest, GaborRequest, PaleyRequest, PrimeRequest, SizeRequest
from ...schemas.response import create_response
from ...services import construct
from ...utils.io import to_schema

router = APIRouter()


def _document(obj, message: str):
    return create_response(
        data=to_schema(obj).model_dump(mode="json"),
        message=message,
        status_code=201,
    )


@router.post("/paley", status_code=201)
def build_paley(body: PaleyRequest):
    """Paley ETF Phi_q as a d x q frame"""
    return _document(construct.paley_etf(body.q, body.modulus), "Paley frame constructed")


@router.post("/diffset", status_code=201)
def build_harmonic(body: DiffsetRequest):
    """Harmonic ETF from a difference set of a finite abelian group"""
    subset = [tuple(x) if isinstance(x, list) else x for x in body.subset]
    frame = construct.etf_from_difference_set(body.group, subset)
    return _document(frame, "Harmonic frame constructed")


@router.post("/conference", status_code=201)
def build_conference(body: PrimeRequest):
    return _document(construct.conference_etf_gram(body.q), "Conference Gram constructed")


@router.post("/simplex", status_code=201)
def build_simplex(body: SizeRequest):
    return _document(construct.simplex_gram(body.n), "Simplex Gram constructed")


@router.post("/onb", status_code=201)
def build_onb(body: SizeRequest):
    return _document(construct.onb_gram(body.n), "Orthonormal basis Gram constructed")


@router.post("/gabor-steiner-tp", status_code=201)
def build_gabor_steiner(body: GaborRequest):
    """Triple-product table of the Gabor-Steiner ETF over Z_p x Z_p"""
    return _document(construct.gabor_steiner_tp_table(body.p), "Triple-product table constructed")
