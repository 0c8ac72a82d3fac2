from __future__ import annotations

import pytest

from blm import Binding, Category, Lexicon, load_lexicon
from blm.cli import default_lexicon_path

# Exemplar matrices for the ordinateur/programme/expérience items, one row
# per template position; row 8 is the correct continuation.
FIG_MAIN = [
    "L’ordinateur avec le programme est en panne.",
    "Les ordinateurs avec le programme sont en panne.",
    "L’ordinateur avec les programmes est en panne.",
    "Les ordinateurs avec les programmes sont en panne.",
    "L’ordinateur avec le programme de l’expérience est en panne.",
    "Les ordinateurs avec le programme de l’expérience sont en panne.",
    "L’ordinateur avec les programmes de l’expérience est en panne.",
    "Les ordinateurs avec les programmes de l’expérience sont en panne.",
]

FIG_COMPLETIVE = [
    "Jean suppose que l’ordinateur avec le programme est en panne.",
    "Jean suppose que les ordinateurs avec le programme sont en panne.",
    "Jean suppose que l’ordinateur avec les programmes est en panne.",
    "Jean suppose que les ordinateurs avec les programmes sont en panne.",
    "Jean suppose que l’ordinateur avec le programme de l’expérience est en panne.",
    "Jean suppose que les ordinateurs avec le programme de l’expérience sont en panne.",
    "Jean suppose que l’ordinateur avec les programmes de l’expérience est en panne.",
    "Jean suppose que les ordinateurs avec les programmes de l’expérience sont en panne.",
]

FIG_RELATIVE = [
    "L’ordinateur avec le programme dont Jean se servait est en panne.",
    "Les ordinateurs avec le programme dont Jean se servait sont en panne.",
    "L’ordinateur avec les programmes dont Jean se servait est en panne.",
    "Les ordinateurs avec les programmes dont Jean se servait sont en panne.",
    "L’ordinateur avec le programme de l’expérience dont Jean se servait est en panne.",
    "Les ordinateurs avec le programme de l’expérience dont Jean se servait sont en panne.",
    "L’ordinateur avec les programmes de l’expérience dont Jean se servait est en panne.",
    "Les ordinateurs avec les programmes de l’expérience dont Jean se servait sont en panne.",
]

# The exemplar answer matrix in presentation order.
FIG_ANSWERS = {
    "Coord": "L’ordinateur avec le programme et l’expérience est en panne.",
    "Correct": "Les ordinateurs avec les programmes de l’expérience sont en panne.",
    "WNA": "L’ordinateur avec le programme est en panne.",
    "AE": "L’ordinateur avec le programme de l’expérience sont en panne.",
    "AlterN1": "Les ordinateurs avec le programme de l’expérience sont en panne.",
    "AlterN2": "Les ordinateurs avec les programmes des expériences sont en panne.",
}


@pytest.fixture(scope="session")
def lexicon() -> Lexicon:
    return load_lexicon(default_lexicon_path())


@pytest.fixture(scope="session")
def franck_binding(lexicon) -> Binding:
    return Binding(
        subject=lexicon.get("ordinateur", Category.NOUN),
        verb=lexicon.get("être en panne", Category.VERB),
        n1=lexicon.get("programme", Category.NOUN),
        n2=lexicon.get("expérience", Category.NOUN),
        prep1="avec",
        prep2="de",
    )
