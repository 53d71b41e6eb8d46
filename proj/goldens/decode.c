/* pipeline: decode, seed: 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a1, int n1, const int * a2, int n2){
  int64_t v_1 = 0;
  int v_2 = 0;
  int v_3 = 0;
  int v_4 = 1;
  int v_5 = 0;
  int v_6 = 0;
  int v_7 = 0;
  while ((v_4 != 0) && (v_3 < n2))
  {
    int const t_8 = a2[v_3];
    int const t_9 = t_8 - ((int)(t_8 == 255));
    int v_10 = 0;
    while ((v_10 <= t_9) && (v_4 != 0))
    {
      int const t_11 = v_10;
      v_10++;
      v_4 = v_4 + 2;
      while ((v_4 & 2) != 0)
      {
        if (v_4 == 3)
        {
          if (v_2 < n1)
          {
            int const t_12 = a1[v_2];
            v_5 = t_12;
            v_6 = v_5 - ((int)(v_5 == 255));
            v_7 = 0;
            v_4 = 7;
            v_2++;
          }
          else
          {
            v_4 = 0;
          }
        }
        if (v_4 == 7)
        {
          if (v_7 <= v_6)
          {
            int const t_13 = v_7;
            v_7++;
            int const t_14 = (int)((t_13 == v_5) || (t_11 == t_8));
            v_1 = v_1 + t_14;
            v_4 = 5;
          }
          else
          {
            v_4 = 3;
          }
        }
      }
    }
    v_3++;
  }
  return v_1;
}
