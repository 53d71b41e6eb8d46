/* The OCaml listing for the zip of a flat_map with a filtered array,
   rewritten statement by statement in C. Refs become int cells, `let`
   bindings become const locals, and the OCaml `while (body; cond) do () done`
   becomes a flag-driven while loop. */
void fn(){
  static const int t_77[4] = {0, 1, 2, 3};
  int v_76 = 12;
  int v_78 = 1;
  int v_82 = 0;
  while ((v_76 > 0) && (v_82 < 4))
  {
    int const t_83 = v_78;
    v_78++;
    int v_84 = 3;
    int v_85 = t_83 + 1;
    while ((v_84 > 0) && ((v_76 > 0) && (v_82 < 4)))
    {
      v_84--;
      int const t_86 = v_85;
      v_85++;
      if ((t_86 % 2) == 0)
      {
        bool v_87 = true;
        while (v_87)
        {
          int const el_88 = t_77[v_82];
          int const t_89 = el_88 * el_88;
          v_76--;
          if ((t_89 % 2) == 0)
          {
            int const t_90 = t_89 * t_89;
            v_87 = false;
            printf("%d\n", t_90);
            printf("%d\n", t_86);
          }
          v_82++;
          v_87 = v_87 && ((v_76 > 0) && (v_82 < 4));
        }
      }
    }
  }
}
