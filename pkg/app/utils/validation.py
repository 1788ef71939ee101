import math
from typing import Any, Dict, List, Sequence


class JobValidator:
    """Classe para validação dos parâmetros de um job"""

    @staticmethod
    def validate_positive(value: float, name: str) -> Dict[str, Any]:
        """Valida um número finito e positivo"""
        result = {"valid": True, "errors": []}

        if not isinstance(value, (int, float)) or not math.isfinite(value):
            result["valid"] = False
            result["errors"].append(f"{name} deve ser um número finito")
            return result

        if value <= 0:
            result["valid"] = False
            result["errors"].append(f"{name} deve ser positivo, recebido {value}")

        return result

    @staticmethod
    def validate_grid(start: float, stop: float, points: int, positive_start: bool = False) -> Dict[str, Any]:
        """Valida uma malha (n ≥ 2, início < fim)"""
        result = {"valid": True, "errors": []}

        if points < 2:
            result["valid"] = False
            result["errors"].append(f"A malha precisa de pelo menos 2 pontos, recebido {points}")

        if not start < stop:
            result["valid"] = False
            result["errors"].append(f"Início da malha ({start}) deve ser menor que o fim ({stop})")

        if positive_start and start <= 0:
            result["valid"] = False
            result["errors"].append(f"k mínimo deve ser positivo (k = 0 é o limiar), recebido {start}")

        return result

    @staticmethod
    def validate_positions(positions: Sequence[float]) -> Dict[str, Any]:
        """Valida posições estritamente crescentes; devolve o índice do primeiro problema"""
        result = {"valid": True, "errors": [], "index": None}

        for index in range(1, len(positions)):
            if not positions[index] > positions[index - 1]:
                result["valid"] = False
                result["index"] = index
                result["errors"].append(
                    f"Posições devem ser estritamente crescentes ({positions[index - 1]} seguido de {positions[index]})"
                )
                break

        return result

    @staticmethod
    def validate_sweep(kind: str, samples: int, lambda_max: float) -> Dict[str, Any]:
        """Valida os parâmetros de varredura"""
        result = {"valid": True, "errors": []}

        if kind == 'none':
            return result

        if samples < 1:
            result["valid"] = False
            result["errors"].append(f"SWEEP_SAMPLES deve ser pelo menos 1, recebido {samples}")

        if kind == 'lambda' and not lambda_max > 0:
            result["valid"] = False
            result["errors"].append(f"LAMBDA_MAX deve ser positivo, recebido {lambda_max}")

        return result

    @staticmethod
    def validate_job(fields: Dict[str, Any]) -> Dict[str, Any]:
        """Valida um job completo; cada erro traz a chave responsável"""
        result: Dict[str, Any] = {"valid": True, "errors": []}

        def collect(check: Dict[str, Any], key: str):
            if not check["valid"]:
                result["valid"] = False
                result["errors"].extend({"key": key, "message": message} for message in check["errors"])

        collect(JobValidator.validate_positive(fields['mass'], "MASS"), 'MASS')
        collect(JobValidator.validate_positive(fields['Q'], "CHARGE"), 'CHARGE')

        k_min, k_max, n_k = fields['k_grid']
        collect(JobValidator.validate_grid(k_min, k_max, n_k, positive_start=True), 'K_MIN')

        if fields.get('x_grid') is not None:
            x_min, x_max, n_x = fields['x_grid']
            collect(JobValidator.validate_grid(x_min, x_max, n_x), 'X_MIN')

        impurity_keys: List[str] = fields.get('impurity_keys', [])
        positions = fields.get('positions', [])
        check = JobValidator.validate_positions(positions)
        if not check["valid"]:
            key = impurity_keys[check["index"]] if check["index"] < len(impurity_keys) else 'IMPURITY'
            collect(check, key)

        collect(JobValidator.validate_sweep(fields['sweep'], fields['sweep_samples'], fields['lambda_max']), 'SWEEP')

        return result
