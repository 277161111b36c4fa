from django.db import models


class Backend(models.TextChoices):
    """Como a evolução adiabática é realizada."""

    IDEAL = "ideal", "Hamiltoniano instantâneo"
    FLOQUET_CIRCUIT = "floquet-circuit", "Circuito de Floquet modificado localmente"


class Ramp(models.TextChoices):
    """Forma da rampa J → −J de uma ligação."""

    LINEAR = "linear", "Linear"
    COSINE = "cosine", "Cosseno"


class Move(models.TextChoices):
    """Passos entre plaquetas vizinhas e a ligação atravessada."""

    EAST = "E", "Leste (ligação Z)"
    WEST = "W", "Oeste (ligação Z)"
    NORTH = "N", "Norte (ligação Y)"
    SOUTH = "S", "Sul (ligação Y)"
    NORTHWEST = "NW", "Noroeste (ligação X)"
    SOUTHEAST = "SE", "Sudeste (ligação X)"


MOVE_OFFSETS = {
    "E": (0, 1),
    "W": (0, -1),
    "N": (1, 0),
    "S": (-1, 0),
    "NW": (1, -1),
    "SE": (-1, 1),
}
