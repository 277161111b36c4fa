from django.db import models


class ExperimentKind(models.TextChoices):
    HEATING = "heating", "Aquecimento de Floquet"
    HEFF_OPTIMIZATION = "heff-optimization", "Engenharia do Hamiltoniano efetivo"
    VSP_SCAN = "vsp-scan", "Escala da preparação variacional"
    FUSION = "fusion", "Fusão de modos de Majorana"
    BRAIDING = "braiding", "Trançamento de modos de Majorana"
    READOUT = "readout", "Leitura por campo local"
    CHIRAL_EDGE = "chiral-edge", "Modo de borda quiral"
    NOISY_VSP = "noisy-vsp", "Preparação com ruído nas portas"
    RYDBERG_SCAN = "rydberg-scan", "Pulsos de Rydberg para G3"
    ORACLE_CHECK = "oracle-check", "Verificação contra o oráculo de spins"
    RESOURCES = "resources", "Estimativa de camadas de portas"
    OPTIMAL_DEPTH = "optimal-depth", "Profundidade ótima"
    ZERO_MODE_SPLITTING = "zero-mode-splitting", "Desdobramento dos modos zero"


class Backend(models.TextChoices):
    FERMION = "fermion", "Férmions livres"
    ORACLE = "oracle", "Vetor de estado"
    FGS = "fgs", "Estados gaussianos com ligação dinâmica"


class RunStatus(models.TextChoices):
    RUNNING = "running", "Em execução"
    FINISHED = "finished", "Concluída"
    FAILED = "failed", "Falhou"


class ResourceStage(models.TextChoices):
    PROJECTION = "projection", "Projeção inicial"
    STATE_PREP = "state-prep", "Preparação do estado"
    EVOLUTION_STEP = "evolution-step", "Passo de evolução"
    READOUT = "readout", "Leitura"
    EDGE_TOTAL = "edge-total", "Total do modo de borda"
    FUSION_TOTAL = "fusion-total", "Total da fusão"
    BRAIDING_TOTAL = "braiding-total", "Total do trançamento"
