from lincut.cli import main

raise SystemExit(main())
