from django.conf import settings


def parametro(nome: str):
    """Retorna um parâmetro numérico padrão das simulações.

    Args:
        nome: Chave do dicionário `SIMULACAO` em settings.

    Returns:
        O valor configurado.
    """
    return settings.SIMULACAO[nome]


def escolher(valor, nome: str):
    """Usa `valor` quando informado; caso contrário, o padrão `nome`."""
    return parametro(nome) if valor is None else valor
