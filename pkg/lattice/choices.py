from django.db import models


class Boundary(models.TextChoices):
    """Condição de contorno da rede."""

    TORUS = "torus", "Toro"
    CYLINDER = "cylinder", "Cilindro"


class LinkType(models.TextChoices):
    """Tipo de ligação, que coincide com o rótulo de Pauli da interação."""

    X = "X", "X"
    Y = "Y", "Y"
    Z = "Z", "Z"


LINK_TYPES = (LinkType.X, LinkType.Y, LinkType.Z)
