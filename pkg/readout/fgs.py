"""Estados gaussianos fermiônicos com uma ligação dinâmica.

Um campo −h σ^z_j no sítio j não comuta com u* da ligação Z de j, que
passa a ser tratada como par de Majoranas b_j = b^z_j (índice N) e
b_j' = b^z_j' (índice N + 1). O Hamiltoniano fica

    H = (i/4) Σ A_ab γ_a γ_b + Σ g γ_a γ_b γ_c γ_d,

com o campo na parte quadrática (−h i b_j c_j) e os termos J e K que
usavam u* como termos quárticos. A evolução usa a aproximação gaussiana
autoconsistente: pelo teorema de Wick

    ⟨H⟩ = ¼ Σ A Γ − Σ g Pf₄(Γ),  Pf₄ = Γ_ab Γ_cd − Γ_ac Γ_bd + Γ_ad Γ_bc,

e Γ evolui como dΓ/dt = [H_mf, Γ], com H_mf = 2 ∂⟨H⟩/∂Γ_ab (a < b).
"""
import logging
from dataclasses import dataclass, replace

import numpy as np

from core.conf import escolher
from core.exceptions import GaugeError, IntegratorInstabilityError
from fermions.gauge import GaugeConfig
from fermions.gaussian import purity_residue, reproject
from fermions.hamiltonian import Couplings, assemble_hamiltonian, three_body_paths, three_body_sign
from fermions.pfaffian import antisymmetrize
from lattice.choices import LinkType
from lattice.honeycomb import LatticeGraph

logger = logging.getLogger(__name__)


def pf4(gamma: np.ndarray, indices) -> float:
    a, b, c, d = indices
    return gamma[a, b] * gamma[c, d] - gamma[a, c] * gamma[b, d] + gamma[a, d] * gamma[b, c]


@dataclass(frozen=True, eq=False)
class ExtendedHamiltonian:
    """Hamiltoniano quadrático mais quártico no espaço estendido.

    Attributes:
        matter: Parte quadrática sem o campo.
        field: Parte quadrática do campo (zeros quando não há campo).
        quartic: Termos (g, (a, b, c, d)).
        lattice: Rede de origem, quando o sistema vem de `extended_hamiltonian`.
        gauge: Calibre estático das demais ligações.
        site: Sítio do campo.
        link: Ligação tratada dinamicamente.
        orientation: +1 se o sítio do campo é ímpar, −1 caso contrário.
    """

    matter: np.ndarray
    field: np.ndarray | None = None
    quartic: tuple = ()
    lattice: LatticeGraph | None = None
    gauge: GaugeConfig | None = None
    site: int | None = None
    link: int | None = None
    orientation: int = 1

    @property
    def dimension(self) -> int:
        return self.matter.shape[0]

    @property
    def quadratic(self) -> np.ndarray:
        return self.matter if self.field is None else self.matter + self.field

    def energy(self, gamma: np.ndarray) -> float:
        """⟨H⟩ pelo teorema de Wick."""
        valor = 0.25 * float(np.einsum("ij,ij->", self.quadratic, gamma))
        return valor - sum(g * pf4(gamma, indices) for g, indices in self.quartic)

    def mean_field(self, gamma: np.ndarray) -> np.ndarray:
        """Matriz antissimétrica H_mf(Γ)."""
        H = np.array(self.quadratic, dtype=float)
        for g, (a, b, c, d) in self.quartic:
            for (x, y), valor in (
                ((a, b), -2.0 * g * gamma[c, d]),
                ((c, d), -2.0 * g * gamma[a, b]),
                ((a, c), 2.0 * g * gamma[b, d]),
                ((b, d), 2.0 * g * gamma[a, c]),
                ((a, d), -2.0 * g * gamma[b, c]),
                ((b, c), -2.0 * g * gamma[a, d]),
            ):
                H[x, y] += valor
                H[y, x] -= valor
        return H

    def reversed(self) -> "ExtendedHamiltonian":
        """Mesmo sistema com todos os termos trocados de sinal, exceto o campo."""
        return replace(self, matter=-self.matter, quartic=tuple((-g, indices) for g, indices in self.quartic))

    def initial_state(self, gamma_matter: np.ndarray) -> np.ndarray:
        """Γ estendido: matéria ⊕ bloco da ligação com ⟨u*⟩ igual ao valor estático."""
        n = gamma_matter.shape[0]
        if n + 2 != self.dimension:
            raise ValueError(f"Γ de matéria com dimensão {n}; esperado {self.dimension - 2}.")
        gamma = np.zeros((n + 2, n + 2))
        gamma[:n, :n] = gamma_matter
        valor = self.orientation * (1.0 if self.gauge is None else self.gauge.u[self.link])
        gamma[n, n + 1] = valor
        gamma[n + 1, n] = -valor
        return gamma

    def bond_expectation(self, gamma: np.ndarray) -> float:
        """⟨u*⟩ = ⟨i b_ímpar b_par⟩."""
        n = self.dimension - 2
        return float(self.orientation * gamma[n, n + 1])

    @property
    def readout_plaquette(self) -> int:
        return self.lattice.link_plaquettes(self.link)[0]

    def plaquette_value(self, gamma: np.ndarray, p: int | None = None) -> float:
        """⟨W_p⟩ com u* dinâmico e as demais ligações estáticas."""
        p = self.readout_plaquette if p is None else p
        ligacoes = self.lattice.plaquette_links(p)
        estaticas = [l for l in ligacoes if l != self.link]
        produto = float(np.prod(self.gauge.u[estaticas]))
        if self.link in ligacoes:
            return produto * self.bond_expectation(gamma)
        return produto


def extended_hamiltonian(
    lattice: LatticeGraph,
    gauge: GaugeConfig,
    couplings: Couplings,
    site: int,
    h: float,
) -> ExtendedHamiltonian:
    """Monta o sistema com campo −h σ^z em `site`.

    Raises:
        GaugeError: O sítio não tem ligação Z (borda do cilindro).
    """
    ligacao = lattice.site_link(site, LinkType.Z)
    if ligacao is None:
        raise GaugeError(f"O sítio {site} não tem ligação Z.")
    n = lattice.n_sites
    bN, bP = n, n + 1
    parceiro = lattice.other_end(ligacao, site)
    orientacao = 1 if lattice.is_odd(site) else -1

    materia = np.zeros((n + 2, n + 2))
    materia[:n, :n] = assemble_hamiltonian(lattice, gauge, couplings, exclude_links=[ligacao])
    campo = np.zeros((n + 2, n + 2))
    campo[bN, site] = -2.0 * h
    campo[site, bN] = 2.0 * h

    w = couplings.weights(lattice.n_links)
    quarticos = []
    if w[ligacao] != 0.0:
        quarticos.append((-couplings.J * w[ligacao], (bN, bP, site, parceiro)))
    for x, k, y, l1, l2 in three_body_paths(lattice):
        if ligacao not in (l1, l2) or x > y:
            continue
        coeficiente = couplings.k_overrides.get(
            (x, k, y), couplings.k_overrides.get((y, k, x), couplings.K * w[l1] * w[l2])
        )
        if coeficiente == 0.0:
            continue
        epsilon = three_body_sign(lattice.links[l1].kind, lattice.links[l2].kind, couplings.three_body)
        if l1 == ligacao:
            outra, inicio_outra, inicio_estrela = l2, k, x
        else:
            outra, inicio_outra, inicio_estrela = l1, x, k
        sentido = 1.0 if lattice.links[ligacao].i == inicio_estrela else -1.0
        g = -coeficiente * epsilon * gauge.link_value(outra, inicio_outra) * sentido * orientacao
        quarticos.append((g, (bN, bP, x, y)))
    logger.debug("Sistema estendido: %d termos quárticos na ligação %d.", len(quarticos), ligacao)
    return ExtendedHamiltonian(
        matter=materia,
        field=campo,
        quartic=tuple(quarticos),
        lattice=lattice,
        gauge=gauge,
        site=site,
        link=ligacao,
        orientation=orientacao,
    )


def _derivative(hamiltonian: ExtendedHamiltonian, gamma: np.ndarray) -> np.ndarray:
    H = hamiltonian.mean_field(gamma)
    return H @ gamma - gamma @ H


def rk4_step(hamiltonian: ExtendedHamiltonian, gamma: np.ndarray, dt: float, abort: float | None = None) -> np.ndarray:
    """Um passo de Runge–Kutta de quarta ordem seguido de re-projeção.

    Raises:
        IntegratorInstabilityError: |Γ² + I| antes da re-projeção acima de
            FGS_PURITY_ABORT.
    """
    k1 = _derivative(hamiltonian, gamma)
    k2 = _derivative(hamiltonian, gamma + 0.5 * dt * k1)
    k3 = _derivative(hamiltonian, gamma + 0.5 * dt * k2)
    k4 = _derivative(hamiltonian, gamma + dt * k3)
    novo = antisymmetrize(gamma + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
    residuo = purity_residue(novo)
    if residuo > escolher(abort, "FGS_PURITY_ABORT"):
        raise IntegratorInstabilityError(f"Resíduo de pureza {residuo:.2e} com dt={dt:g}.")
    return reproject(novo)


@dataclass
class FgsTrajectory:
    """Estado final e observável amostrado a cada passo (incluindo t = 0)."""

    gamma: np.ndarray
    times: np.ndarray
    values: np.ndarray


def integrate(
    hamiltonian: ExtendedHamiltonian,
    gamma: np.ndarray,
    duration: float,
    dt: float | None = None,
    observe=None,
) -> FgsTrajectory:
    """Evolui Γ por `duration` em passos dt, mais um passo final parcial.

    Args:
        observe: Função Γ ↦ float registrada em cada instante; sem ela
            registra a energia.
    """
    if duration < 0:
        raise ValueError("A duração deve ser não negativa.")
    passo = escolher(dt, "FGS_DT")
    observe = observe or hamiltonian.energy
    inteiros = int(np.floor(duration / passo + 1e-9))
    resto = duration - inteiros * passo
    passos = [passo] * inteiros + ([resto] if resto > 1e-12 else [])
    tempos, valores, t = [0.0], [observe(gamma)], 0.0
    for delta in passos:
        gamma = rk4_step(hamiltonian, gamma, delta)
        t += delta
        tempos.append(t)
        valores.append(observe(gamma))
    return FgsTrajectory(gamma, np.array(tempos), np.array(valores))


def imaginary_time_ground_state(
    hamiltonian: ExtendedHamiltonian,
    gamma0: np.ndarray,
    dt: float = 0.05,
    max_steps: int = 10000,
    tol: float = 1e-9,
) -> tuple:
    """Descida de energia na variedade de estados puros.

    Γ ← reproject(Γ − dt (H_mf + Γ H_mf Γ)); o termo entre parênteses é o
    dobro da projeção de H_mf no espaço tangente. Passos que aumentariam a
    energia são rejeitados e dt é reduzido à metade. A paridade de Γ0 é
    preservada.

    Returns:
        (Γ, energia, passos aceitos).
    """
    gamma = reproject(gamma0)
    atual = hamiltonian.energy(gamma)
    passo, aceitos = dt, 0
    for _ in range(max_steps):
        H = hamiltonian.mean_field(gamma)
        gradiente = H + gamma @ H @ gamma
        if np.max(np.abs(gradiente)) < tol:
            break
        candidato = reproject(gamma - passo * gradiente)
        energia = hamiltonian.energy(candidato)
        if energia > atual:
            passo *= 0.5
            if passo < 1e-12:
                logger.warning("Passo imaginário abaixo de 1e-12; interrompendo.")
                break
            continue
        gamma, atual, aceitos = candidato, energia, aceitos + 1
    logger.debug("Tempo imaginário: energia %.10f após %d passos.", atual, aceitos)
    return gamma, atual, aceitos
