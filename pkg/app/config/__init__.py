# Arquivo de inicialização do pacote config