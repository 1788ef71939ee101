"""
Funções auxiliares para o sistema
"""
import ast
import math
import operator

import numpy as np

_BINARY_OPERATORS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}

_UNARY_OPERATORS = {
    ast.UAdd: operator.pos,
    ast.USub: operator.neg,
}

_CONSTANTS = {'pi': math.pi}


def evaluate_number(text):
    """Avalia um número ou expressão aritmética simples com pi (ex.: '2*pi/3')"""
    if not isinstance(text, str) or not text.strip():
        raise ValueError("valor vazio")

    def _eval(node):
        if isinstance(node, ast.Expression):
            return _eval(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id.lower() in _CONSTANTS:
            return _CONSTANTS[node.id.lower()]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINARY_OPERATORS:
            return _BINARY_OPERATORS[type(node.op)](_eval(node.left), _eval(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY_OPERATORS:
            return _UNARY_OPERATORS[type(node.op)](_eval(node.operand))
        raise ValueError(f"expressão não suportada: {text!r}")

    try:
        tree = ast.parse(text.strip(), mode='eval')
        value = _eval(tree)
    except (SyntaxError, ZeroDivisionError, OverflowError) as e:
        raise ValueError(f"expressão inválida {text!r}: {e}")

    if not math.isfinite(value):
        raise ValueError(f"valor não finito: {text!r}")
    return value


def split_fields(text, count):
    """Separa 'a, b, c' em exatamente count campos"""
    fields = [field.strip() for field in str(text).split(',')]
    if len(fields) != count or not all(fields):
        raise ValueError(f"esperados {count} campos separados por vírgula, recebido {text!r}")
    return fields


def linear_grid(start, stop, points):
    """Malha uniforme incluindo os extremos; simétrica bit a bit quando start = -stop e points é ímpar"""
    start, stop, points = float(start), float(stop), int(points)
    if start == -stop and points % 2 == 1 and points > 1:
        half = np.linspace(0.0, stop, points // 2 + 1)
        return np.concatenate([-half[:0:-1], half])
    return np.linspace(start, stop, points)


def quadrant_sweep(samples_per_quadrant):
    """q = jπ/2 + iπ/(2n), i = 0..n-1, nos quatro quadrantes (inclui as fronteiras 0, π/2, π, 3π/2)"""
    step = 0.5 * math.pi / samples_per_quadrant
    return np.array([
        quadrant * 0.5 * math.pi + i * step
        for quadrant in range(4)
        for i in range(samples_per_quadrant)
    ])
