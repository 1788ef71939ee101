# Presets de configuração e dados de referência
