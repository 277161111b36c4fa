from decouple import config, Csv
from pathlib import Path


"""Configuração central do projeto Django 'floquet_lab'.

Este arquivo define as configurações globais das simulações, carregando
valores específicos de ambiente a partir de variáveis de ambiente para que
a mesma base de código rode em estações de trabalho e em integração contínua.
"""

BASE_DIR = Path(__file__).resolve().parent.parent


"""Configurações de segurança.

SECRET_KEY é exigida pelo Django mesmo sem superfície web; o valor padrão
serve apenas para execuções locais.
DEBUG ativa ou desativa o modo de depuração.
"""
SECRET_KEY = config("SECRET_KEY", default="floquet-lab-chave-local")
DEBUG = config("DEBUG", default=False, cast=bool)
ALLOWED_HOSTS = config("ALLOWED_HOSTS", default="localhost", cast=Csv())


"""Lista de todas as aplicações Django ativas neste projeto.

Cada módulo da simulação é uma aplicação; a ordem segue as dependências
(da rede hexagonal até o harness de experimentos).
"""
INSTALLED_APPS = [
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "rest_framework",
    "core",
    "lattice",
    "fermions",
    "floquet",
    "variational",
    "anyons",
    "readout",
    "oracle",
    "rydberg",
    "experiments",
]


"""Configura a conexão com o banco de dados.

O banco guarda somente o registro de execuções de experimentos.
"""
DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}


"""Configurações de internacionalização e localização."""
LANGUAGE_CODE = config("LANGUAGE_CODE", default="pt-br")
TIME_ZONE = config("TIME_ZONE", default="America/Sao_Paulo")
USE_I18N = config("USE_I18N", default=True, cast=bool)
USE_TZ = config("USE_TZ", default=True, cast=bool)


"""Define o tipo de campo padrão para chaves primárias automáticas."""
DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


"""Parâmetros numéricos padrão das simulações.

Todos os valores podem ser sobrescritos explicitamente nas chamadas das
operações; aqui ficam apenas os padrões do projeto.
"""
SIMULACAO = {
    "PURITY_TOL": 1e-8,
    "SKEW_TOL": 1e-12,
    "ZERO_MODE_TOL": 1e-8,
    "LOG_BRANCH_MARGIN": 1e-6,
    "ORACLE_MAX_QUBITS": config("FLOQUET_ORACLE_MAX_QUBITS", default=24, cast=int),
    "FGS_DT": 0.01,
    "FGS_PURITY_ABORT": 1e-4,
    "ADIABATIC_SUBSTEPS": 20,
    "ADIABATIC_SUBSTEP_TIME": 0.5,
    "HEATING_CYCLES": 1000,
    "RANDOM_SYMMETRIC_NOISE": 0.05,
    "ARMIJO": 1e-4,
    "BACKTRACK": 0.5,
    "FRAME_MIN_SEPARATION": 3,
    "VSP_FIT_FLOOR": 1e-12,
    "DEFAULT_SEED": config("FLOQUET_DEFAULT_SEED", default=0, cast=int),
    "OUTPUT_DIR": Path(config("FLOQUET_OUTPUT_DIR", default=str(BASE_DIR / "resultados"))),
}


"""Configuração de logs.

Um único handler de console com formato detalhado; o nível vem de LOG_LEVEL.
"""
LOG_LEVEL = config("LOG_LEVEL", default="INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "detalhado": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "detalhado",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": "WARNING",
    },
    "loggers": {
        app: {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False}
        for app in (
            "core",
            "lattice",
            "fermions",
            "floquet",
            "variational",
            "anyons",
            "readout",
            "oracle",
            "rydberg",
            "experiments",
        )
    },
}
