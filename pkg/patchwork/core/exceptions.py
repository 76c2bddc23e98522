"""
Exceções customizadas do motor de patchworking.
Cada falha tratável tem sua classe e um código estável; a CLI converte as
classes em códigos de saída.
"""

from typing import Optional, Sequence


class PatchworkException(Exception):
    """
    Exceção base para todas as exceções do motor.
    Todas as outras exceções customizadas devem herdar desta.
    """

    def __init__(self, message: str, error_code: Optional[str] = None):
        self.message = message
        self.error_code = error_code
        super().__init__(self.message)


class DimensionLimitExceeded(PatchworkException):
    """
    Exceção lançada quando a dimensão ambiente passa do limite configurado.
    Ortantes são palavras de máquina, então o limite é verificado na carga.
    """

    def __init__(self, dim: int, limit: int):
        message = f"Dimensão {dim} excede o limite configurado {limit}"
        super().__init__(message, "DIMENSION_LIMIT_EXCEEDED")
        self.dim = dim
        self.limit = limit


class InvalidFileFormat(PatchworkException):
    """Exceção lançada quando um arquivo de entrada não pode ser interpretado."""

    def __init__(self, path: str, details: str):
        message = f"Arquivo inválido '{path}': {details}"
        super().__init__(message, "INVALID_FILE_FORMAT")
        self.path = path
        self.details = details


class InvalidInputError(PatchworkException, ValueError):
    """
    Exceção lançada quando um valor de entrada é malformado.
    Também é ValueError, então validadores do pydantic a tratam como erro de campo.
    """

    def __init__(self, entity: str, details: str):
        message = f"Entrada inválida ({entity}): {details}"
        super().__init__(message, "INVALID_INPUT")
        self.entity = entity
        self.details = details


class UnknownSimplexError(PatchworkException):
    """Exceção lançada quando um simplexo não é face da triangulação."""

    def __init__(self, simplex: Sequence[int]):
        message = f"Simplexo {list(simplex)} não é face da triangulação"
        super().__init__(message, "UNKNOWN_SIMPLEX")
        self.simplex = tuple(simplex)


class SimplexOutsidePolytopeError(PatchworkException):
    """Exceção lançada quando um vértice do simplexo viola uma faceta do politopo."""

    def __init__(self, simplex: Sequence[int], facet_index: int):
        message = (
            f"Simplexo {list(simplex)} tem vértice fora do politopo "
            f"(faceta {facet_index})"
        )
        super().__init__(message, "SIMPLEX_OUTSIDE_POLYTOPE")
        self.simplex = tuple(simplex)
        self.facet_index = facet_index


class AssignmentCoverageError(PatchworkException):
    """
    Exceção lançada quando a estrutura de fase não cobre exatamente os k-simplexos.
    Guarda os simplexos faltantes e os excedentes.
    """

    def __init__(self, missing: Sequence[tuple], extra: Sequence[tuple]):
        message = (
            f"Cobertura inválida: {len(missing)} simplexos sem atribuição, "
            f"{len(extra)} atribuições excedentes"
        )
        if missing:
            message += f"; primeiro faltante {list(missing[0])}"
        if extra:
            message += f"; primeiro excedente {list(extra[0])}"
        super().__init__(message, "ASSIGNMENT_COVERAGE")
        self.missing = list(missing)
        self.extra = list(extra)


class InvalidPhaseStructureError(PatchworkException):
    """Exceção lançada quando uma operação exige estrutura de fase válida."""

    def __init__(self, details: str):
        message = f"Estrutura de fase real inválida: {details}"
        super().__init__(message, "INVALID_PHASE_STRUCTURE")
        self.details = details


class InconsistentSignsError(PatchworkException):
    """Exceção lançada quando nenhuma distribuição de sinais reproduz a estrutura."""

    def __init__(self, edge: Sequence[int]):
        message = f"Nenhuma distribuição de sinais reproduz a aresta {list(edge)}"
        super().__init__(message, "INCONSISTENT_SIGNS")
        self.edge = tuple(edge)


class NotASimplexError(PatchworkException):
    """Exceção lançada quando a operação exige uma triangulação de um único simplexo."""

    def __init__(self, simplex_count: int):
        message = (
            f"Esperado um único simplexo unimodular, recebidos {simplex_count} "
            "simplexos maximais"
        )
        super().__init__(message, "NOT_A_SIMPLEX")
        self.simplex_count = simplex_count


class FacetError(PatchworkException):
    """Exceção lançada quando o simplexo informado não é uma faceta utilizável."""

    def __init__(self, facet: Sequence[int], details: str):
        message = f"{list(facet)} não é uma faceta utilizável: {details}"
        super().__init__(message, "INVALID_FACET")
        self.facet = tuple(facet)
        self.details = details


class CodimensionError(PatchworkException):
    """Exceção lançada quando a codimensão está fora do intervalo da operação."""

    def __init__(self, codim: int, details: str):
        message = f"Codimensão {codim} não permitida: {details}"
        super().__init__(message, "CODIMENSION_OUT_OF_RANGE")
        self.codim = codim
        self.details = details


class CyclicOrientationError(PatchworkException):
    """
    Exceção lançada quando a orientação das arestas tem ciclo dentro de um simplexo.
    O ciclo testemunha fica disponível para relatórios.
    """

    def __init__(self, simplex: Sequence[int], cycle: Sequence[int]):
        arrows = " -> ".join(str(v) for v in [*cycle, cycle[0]])
        message = f"Orientação cíclica no simplexo {list(simplex)}: {arrows}"
        super().__init__(message, "CYCLIC_ORIENTATION")
        self.simplex = tuple(simplex)
        self.cycle = tuple(cycle)


class NecklaceError(PatchworkException):
    """Exceção lançada quando as faces de um simplexo não fecham um colar."""

    def __init__(self, tau: Sequence[int], details: str):
        message = f"Sem decomposição em colar para {list(tau)}: {details}"
        super().__init__(message, "NECKLACE_NOT_FOUND")
        self.tau = tuple(tau)
        self.details = details


class TriangulationMismatchError(PatchworkException):
    """Exceção lançada quando dois objetos deveriam compartilhar a triangulação."""

    def __init__(self, operation: str):
        message = f"A operação '{operation}' exige a mesma triangulação nas duas entradas"
        super().__init__(message, "TRIANGULATION_MISMATCH")
        self.operation = operation


class EnclosureCapExceeded(PatchworkException):
    """Exceção lançada quando a busca exaustiva de sinais passa do limite de vértices."""

    def __init__(self, vertex_count: int, cap: int):
        message = f"Busca exaustiva em {vertex_count} vértices excede o limite {cap}"
        super().__init__(message, "ENCLOSURE_CAP_EXCEEDED")
        self.vertex_count = vertex_count
        self.cap = cap


class DisconnectedDualGraphError(PatchworkException):
    """Exceção lançada quando o grafo dual da triangulação é desconexo."""

    def __init__(self, component_count: int):
        message = f"Grafo dual com {component_count} componentes; triangulação inválida"
        super().__init__(message, "DISCONNECTED_DUAL_GRAPH")
        self.component_count = component_count


class InsufficientSamplesError(PatchworkException):
    """Exceção lançada quando a interpolação recebe amostras de menos."""

    def __init__(self, given: int, needed: int):
        message = f"Interpolação exige ao menos {needed} amostras, recebidas {given}"
        super().__init__(message, "INSUFFICIENT_SAMPLES")
        self.given = given
        self.needed = needed


class UnsupportedExportError(PatchworkException):
    """Exceção lançada quando a exportação de malha não suporta a dimensão ou o formato."""

    def __init__(self, details: str):
        message = f"Exportação não suportada: {details}"
        super().__init__(message, "UNSUPPORTED_EXPORT")
        self.details = details


class UnclassifiableComponentError(PatchworkException):
    """Exceção lançada quando uma componente da curva não se encaixa em nenhuma família."""

    def __init__(self, component: int, details: str):
        message = f"Componente {component} não classificável: {details}"
        super().__init__(message, "UNCLASSIFIABLE_COMPONENT")
        self.component = component
        self.details = details


class InvariantViolation(PatchworkException):
    """
    Exceção lançada quando um invariante interno falha.
    Indica erro de construção, não de entrada.
    """

    def __init__(self, invariant: str, details: str):
        message = f"Invariante '{invariant}' violado: {details}"
        super().__init__(message, "INVARIANT_VIOLATION")
        self.invariant = invariant
        self.details = details


# Mapeamento de exceções para códigos de saída da CLI
EXCEPTION_EXIT_CODE_MAPPING = {
    DimensionLimitExceeded: 1,
    InvalidFileFormat: 1,
    InvalidInputError: 1,
    UnknownSimplexError: 1,
    SimplexOutsidePolytopeError: 1,
    AssignmentCoverageError: 1,
    InvalidPhaseStructureError: 1,
    InconsistentSignsError: 1,
    NotASimplexError: 1,
    FacetError: 1,
    CodimensionError: 1,
    CyclicOrientationError: 1,
    NecklaceError: 1,
    TriangulationMismatchError: 1,
    EnclosureCapExceeded: 1,
    DisconnectedDualGraphError: 1,
    InsufficientSamplesError: 1,
    UnsupportedExportError: 1,
    UnclassifiableComponentError: 2,
    InvariantViolation: 2,
    PatchworkException: 2,
}


def get_exit_code_for_exception(exception: Exception) -> int:
    """
    Retorna o código de saída da CLI para uma exceção.

    Args:
        exception: A exceção a ser mapeada

    Returns:
        int: 1 para erros de entrada e validação, 2 nos demais casos
    """
    return EXCEPTION_EXIT_CODE_MAPPING.get(type(exception), 2)


def create_error_response(exception: PatchworkException) -> dict:
    """
    Cria uma resposta de erro padronizada a partir de uma exceção customizada.

    Args:
        exception: A exceção customizada

    Returns:
        dict: Dados formatados do erro
    """
    return {
        "detail": exception.message,
        "error_code": exception.error_code,
        "error_type": type(exception).__name__,
    }
