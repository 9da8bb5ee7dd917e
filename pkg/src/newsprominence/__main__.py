from newsprominence.cli import main

raise SystemExit(main())
