/* pipeline: rle, seed: 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

void fn(const int * a1, int n1){
  int v_1 = 0;
  int v_2 = 0;
  while (v_2 < n1)
  {
    int const t_3 = a1[v_2];
    bool const t_4 = t_3 != 0;
    int const t_5 = v_1;
    if (t_4)
    {
      v_1 = 0;
      int const t_9 = t_5 - ((int)(t_5 == 255));
      int v_10 = 0;
      while (v_10 <= t_9)
      {
        int const t_11 = v_10;
        v_10++;
        printf("%d\n", t_11 == t_5);
      }
    }
    else
    {
      v_1 = t_5 + 1;
      if (v_1 == 255)
      {
        v_1 = 0;
        int const t_6 = 255 - ((int)(255 == 255));
        int v_7 = 0;
        while (v_7 <= t_6)
        {
          int const t_8 = v_7;
          v_7++;
          printf("%d\n", t_8 == 255);
        }
      }
    }
    v_2++;
  }
}
