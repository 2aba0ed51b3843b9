# print("taftsmash package imported")
from . import (
    commpoly,
    config,
    discriminant,
    exactfield,
    hopfact,
    linalg,
    ncpoly,
    poisson,
    qcomb,
    rauto,
    report,
    structure,
)

__all__ = [
    "commpoly",
    "config",
    "discriminant",
    "exactfield",
    "hopfact",
    "linalg",
    "ncpoly",
    "poisson",
    "qcomb",
    "rauto",
    "report",
    "structure",
]
