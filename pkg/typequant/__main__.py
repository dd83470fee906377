from typequant.app import main

main()
