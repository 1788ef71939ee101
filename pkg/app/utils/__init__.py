# Arquivo de inicialização do pacote utils