"""
Secure Location Modulation - Exceções
Author: Gabriel Demetrios Lafis
Year: 2025

Hierarquia de exceções compartilhada por todos os módulos do simulador.
"""

from typing import Any


class SlmError(Exception):
    """Erro base do simulador"""


class GeometryError(SlmError, ValueError):
    """Índices fora da faixa, pontos coincidentes ou raio não positivo"""


class QuantizationError(SlmError, ValueError):
    """Fase não finita ou argumento complexo indefinido"""


class NullingError(SlmError, ValueError):
    """Pesos degenerados ou padrão de campo degenerado no modelo de nulling"""


class InfeasibleSolutionError(SlmError):
    """Nenhum candidato viável dentro do orçamento de otimização"""

    def __init__(self, message: str, solution: Any = None):
        super().__init__(message)
        self.solution = solution  # melhor candidato penalizado


class EvmError(SlmError, ValueError):
    """EVM indefinido (referência nula, amostras vazias)"""


class LibraryError(SlmError):
    """Falha na geração ou leitura da biblioteca de sequências"""


class LinkError(SlmError, ValueError):
    """Erro na simulação de enlace (tamanhos incompatíveis)"""


class ConfigError(SlmError, ValueError):
    """Configuração inválida, preset desconhecido ou arquivo malformado"""
